#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "laurel/matrix.hpp"

namespace laurel {

struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
    ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
        tp += o.tp;
        fp += o.fp;
        tn += o.tn;
        fn += o.fn;
        return *this;
    }
    bool operator==(const ConfusionMatrix&) const = default;
};

struct ScoredSample {
    double score = 0.0;
    int label = 0;
    std::int32_t year = 0;
    std::string group;
};

/// Predicted positive iff score >= threshold.
ConfusionMatrix confusion(std::span<const double> scores, std::span<const int> labels,
                          double threshold = 0.5);
ConfusionMatrix confusion(std::span<const ScoredSample> samples, double threshold = 0.5);

/// Mean of the positive-class and negative-class F1; 0/0 counts as 0.
double f1_macro(const ConfusionMatrix& conf);

/// Area under the ROC step curve (trapezoids over tie blocks). Equal to the
/// Mann-Whitney statistic with ties worth one half. Throws UndefinedMetric
/// unless both classes are present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

/// Average precision: Σ (R_k - R_{k-1}) P_k over descending score blocks,
/// tied scores forming one block. Throws UndefinedMetric without positives.
double pr_auc(std::span<const double> scores, std::span<const int> labels);

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
};

/// (fpr, tpr) after each tie block, starting at (0, 0).
std::vector<CurvePoint> roc_curve(std::span<const double> scores, std::span<const int> labels);
/// (recall, precision) after each tie block.
std::vector<CurvePoint> pr_curve(std::span<const double> scores, std::span<const int> labels);

struct ThresholdF1 {
    double threshold = 0.5;
    double f1 = 0.0;
};

/// Highest macro-F1 over all thresholds equal to an observed score.
ThresholdF1 best_threshold_f1(std::span<const double> scores, std::span<const int> labels);

struct YearBucket {
    std::int32_t year = 0;
    double f1 = 0.0;
    std::size_t count = 0;
    bool sparse = false;  ///< fewer than the minimum count
    ConfusionMatrix confusion;
};

/// Per-year macro-F1, sorted by year.
std::vector<YearBucket> f1_by_year(std::span<const ScoredSample> samples, double threshold = 0.5,
                                   std::size_t min_count = 10);

struct BoxSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double whisker_low = 0.0;   ///< smallest value >= q1 - 1.5 IQR
    double whisker_high = 0.0;  ///< largest value <= q3 + 1.5 IQR
    std::size_t count = 0;
};

/// Linear interpolation between order statistics of an ascending range.
double quantile_sorted(std::span<const double> sorted, double q);
BoxSummary summarize(std::span<const double> values);

struct DistributionRow {
    std::string feature;
    int label = 0;
    BoxSummary summary;
};

/// Box-plot summaries per (feature, class). `features` holds one row per
/// sample with one column per name.
std::vector<DistributionRow> feature_distributions(const Matrix& features,
                                                   std::span<const int> labels,
                                                   std::span<const std::string> names);

void save_curve_csv(const std::filesystem::path& path, std::string_view header,
                    std::span<const CurvePoint> points);
void save_f1_by_year_csv(const std::filesystem::path& path, std::span<const YearBucket> buckets);
void save_feature_dist_csv(const std::filesystem::path& path,
                           std::span<const DistributionRow> rows);

} // namespace laurel
