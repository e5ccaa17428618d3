#pragma once

#include <stdexcept>
#include <string>

namespace laurel {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A file or record violates its on-disk format.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Corpus-level inconsistency (duplicate ids, empty corpus).
class CorpusError : public Error {
public:
    using Error::Error;
};

/// A metric is undefined for the given input (e.g. single-class ROC AUC).
class UndefinedMetric : public Error {
public:
    using Error::Error;
};

/// Training diverged or was misconfigured.
class TrainingError : public Error {
public:
    using Error::Error;
};

} // namespace laurel
