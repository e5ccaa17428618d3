#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace laurel {

using Vector = std::vector<double>;

/// x·y / (‖x‖‖y‖), clamped to [-1, 1]. Throws Error on a zero-norm input or a
/// dimension mismatch.
double cosine_similarity(std::span<const double> x, std::span<const double> y);

/// Average cosine similarity over all ordered pairs i != j. Requires at least
/// two nonzero vectors of one dimension; throws UndefinedMetric for fewer.
double phi_score(std::span<const Vector> vectors);

inline constexpr int kNoise = -1;

struct ClusterLabels {
    std::vector<int> labels;  ///< cluster id in [0, cluster_count) or kNoise
    int cluster_count = 0;
    std::size_t noise_count = 0;
};

struct DbscanParams {
    double eps = 0.3;
    std::size_t min_pts = 2;
};

/// DBSCAN under cosine distance 1 - cos(x, y). A point is core when at least
/// min_pts points (itself included) lie within eps. Clusters are numbered in
/// discovery order, scanning points in input order.
ClusterLabels dbscan(std::span<const Vector> vectors, DbscanParams params);

/// (clusters + noise points) / n, every noise point counted as its own cluster.
double theta_score(std::span<const Vector> vectors, DbscanParams params);

} // namespace laurel
