#include "laurel/text_scores.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "laurel/errors.hpp"

namespace laurel {

namespace {

double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return std::sqrt(s);
}

std::vector<Vector> normalized(std::span<const Vector> vectors) {
    std::vector<Vector> out;
    out.reserve(vectors.size());
    const std::size_t dim = vectors.empty() ? 0 : vectors.front().size();
    for (const auto& v : vectors) {
        if (v.size() != dim)
            throw Error("vectors differ in dimension");
        const double n = norm(v);
        if (n == 0.0)
            throw Error("zero vector has no direction");
        Vector u(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            u[i] = v[i] / n;
        out.push_back(std::move(u));
    }
    return out;
}

} // namespace

double cosine_similarity(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw Error("cosine similarity of vectors with different dimensions");
    const double nx = norm(x);
    const double ny = norm(y);
    if (nx == 0.0 || ny == 0.0)
        throw Error("cosine similarity of a zero vector");
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        dot += x[i] * y[i];
    return std::clamp(dot / (nx * ny), -1.0, 1.0);
}

double phi_score(std::span<const Vector> vectors) {
    const std::size_t n = vectors.size();
    if (n < 2)
        throw UndefinedMetric("phi-score needs at least two vectors, got " + std::to_string(n));
    // Σ_{i≠j} û_i·û_j = ‖Σ û_i‖² − n for unit vectors û.
    const auto units = normalized(vectors);
    Vector sum(units.front().size(), 0.0);
    for (const auto& u : units)
        for (std::size_t k = 0; k < u.size(); ++k)
            sum[k] += u[k];
    double sq = 0.0;
    for (double s : sum)
        sq += s * s;
    double self = 0.0;
    for (const auto& u : units)
        for (double x : u)
            self += x * x;
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    return std::clamp((sq - self) / pairs, -1.0, 1.0);
}

ClusterLabels dbscan(std::span<const Vector> vectors, DbscanParams params) {
    const std::size_t n = vectors.size();
    ClusterLabels out;
    out.labels.assign(n, kNoise);
    if (n == 0)
        return out;
    const auto units = normalized(vectors);

    std::vector<std::vector<std::size_t>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i) {
        neighbors[i].push_back(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < units[i].size(); ++k)
                dot += units[i][k] * units[j][k];
            if (1.0 - std::clamp(dot, -1.0, 1.0) <= params.eps) {
                neighbors[i].push_back(j);
                neighbors[j].push_back(i);
            }
        }
    }
    auto is_core = [&](std::size_t i) { return neighbors[i].size() >= params.min_pts; };

    constexpr int kUnassigned = -2;
    std::vector<int> label(n, kUnassigned);
    std::vector<std::size_t> queue;
    for (std::size_t p = 0; p < n; ++p) {
        if (label[p] != kUnassigned || !is_core(p))
            continue;
        const int cluster = out.cluster_count++;
        label[p] = cluster;
        queue.assign(neighbors[p].begin(), neighbors[p].end());
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto q = queue[head];
            if (label[q] != kUnassigned)
                continue;
            label[q] = cluster;
            if (is_core(q))
                queue.insert(queue.end(), neighbors[q].begin(), neighbors[q].end());
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (label[i] == kUnassigned) {
            ++out.noise_count;
        } else {
            out.labels[i] = label[i];
        }
    }
    return out;
}

double theta_score(std::span<const Vector> vectors, DbscanParams params) {
    if (vectors.empty())
        throw UndefinedMetric("theta-score needs at least one vector");
    const auto clusters = dbscan(vectors, params);
    return static_cast<double>(clusters.cluster_count + clusters.noise_count) /
           static_cast<double>(vectors.size());
}

} // namespace laurel
