#include "laurel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "laurel/errors.hpp"
#include "laurel/feature_table.hpp"

namespace laurel {

namespace {

void check_sizes(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size())
        throw Error("scores and labels differ in length");
}

/// Tie blocks in descending score order: (score, positives, negatives).
struct Block {
    double score;
    std::uint64_t pos;
    std::uint64_t neg;
};

std::vector<Block> descending_blocks(std::span<const double> scores, std::span<const int> labels) {
    check_sizes(scores, labels);
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::vector<Block> blocks;
    for (std::size_t i : order) {
        if (blocks.empty() || blocks.back().score != scores[i])
            blocks.push_back({scores[i], 0, 0});
        if (labels[i])
            ++blocks.back().pos;
        else
            ++blocks.back().neg;
    }
    return blocks;
}

double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

double f1(double tp, double fp, double fn) {
    const double p = safe_ratio(tp, tp + fp);
    const double r = safe_ratio(tp, tp + fn);
    return safe_ratio(2.0 * p * r, p + r);
}

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    return out;
}

} // namespace

ConfusionMatrix confusion(std::span<const double> scores, std::span<const int> labels,
                          double threshold) {
    check_sizes(scores, labels);
    ConfusionMatrix c;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool predicted = scores[i] >= threshold;
        if (labels[i]) {
            predicted ? ++c.tp : ++c.fn;
        } else {
            predicted ? ++c.fp : ++c.tn;
        }
    }
    return c;
}

ConfusionMatrix confusion(std::span<const ScoredSample> samples, double threshold) {
    ConfusionMatrix c;
    for (const auto& s : samples) {
        const bool predicted = s.score >= threshold;
        if (s.label) {
            predicted ? ++c.tp : ++c.fn;
        } else {
            predicted ? ++c.fp : ++c.tn;
        }
    }
    return c;
}

double f1_macro(const ConfusionMatrix& c) {
    const double positive = f1(double(c.tp), double(c.fp), double(c.fn));
    const double negative = f1(double(c.tn), double(c.fn), double(c.fp));
    return (positive + negative) / 2.0;
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
    const auto blocks = descending_blocks(scores, labels);
    std::uint64_t positives = 0, negatives = 0;
    for (const auto& b : blocks) {
        positives += b.pos;
        negatives += b.neg;
    }
    if (positives == 0 || negatives == 0)
        throw UndefinedMetric("ROC AUC needs both classes");
    // Twice the trapezoid area in count units, kept integral.
    std::uint64_t area2 = 0;
    std::uint64_t tp = 0;
    for (const auto& b : blocks) {
        area2 += b.neg * (2 * tp + b.pos);
        tp += b.pos;
    }
    return static_cast<double>(area2) /
           (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
}

double pr_auc(std::span<const double> scores, std::span<const int> labels) {
    const auto blocks = descending_blocks(scores, labels);
    std::uint64_t positives = 0;
    for (const auto& b : blocks)
        positives += b.pos;
    if (positives == 0)
        throw UndefinedMetric("PR AUC needs at least one positive");
    double ap = 0.0;
    std::uint64_t tp = 0, fp = 0;
    for (const auto& b : blocks) {
        tp += b.pos;
        fp += b.neg;
        if (b.pos == 0)
            continue;
        const double precision = double(tp) / double(tp + fp);
        ap += (double(b.pos) / double(positives)) * precision;
    }
    return ap;
}

std::vector<CurvePoint> roc_curve(std::span<const double> scores, std::span<const int> labels) {
    const auto blocks = descending_blocks(scores, labels);
    std::uint64_t positives = 0, negatives = 0;
    for (const auto& b : blocks) {
        positives += b.pos;
        negatives += b.neg;
    }
    std::vector<CurvePoint> curve{{0.0, 0.0}};
    std::uint64_t tp = 0, fp = 0;
    for (const auto& b : blocks) {
        tp += b.pos;
        fp += b.neg;
        curve.push_back({safe_ratio(double(fp), double(negatives)),
                         safe_ratio(double(tp), double(positives))});
    }
    return curve;
}

std::vector<CurvePoint> pr_curve(std::span<const double> scores, std::span<const int> labels) {
    const auto blocks = descending_blocks(scores, labels);
    std::uint64_t positives = 0;
    for (const auto& b : blocks)
        positives += b.pos;
    std::vector<CurvePoint> curve;
    std::uint64_t tp = 0, fp = 0;
    for (const auto& b : blocks) {
        tp += b.pos;
        fp += b.neg;
        curve.push_back({safe_ratio(double(tp), double(positives)),
                         safe_ratio(double(tp), double(tp + fp))});
    }
    return curve;
}

ThresholdF1 best_threshold_f1(std::span<const double> scores, std::span<const int> labels) {
    const auto blocks = descending_blocks(scores, labels);
    ConfusionMatrix c;
    for (const auto& b : blocks) {
        c.fn += b.pos;
        c.tn += b.neg;
    }
    // Start above the top score: nothing predicted positive.
    const double top = blocks.empty() ? 1.0 : blocks.front().score;
    ThresholdF1 best{std::nextafter(top, std::numeric_limits<double>::infinity()), f1_macro(c)};
    for (const auto& b : blocks) {
        c.tp += b.pos;
        c.fn -= b.pos;
        c.fp += b.neg;
        c.tn -= b.neg;
        const double value = f1_macro(c);
        if (value > best.f1)
            best = {b.score, value};
    }
    return best;
}

std::vector<YearBucket> f1_by_year(std::span<const ScoredSample> samples, double threshold,
                                   std::size_t min_count) {
    std::map<std::int32_t, ConfusionMatrix> by_year;
    for (const auto& s : samples)
        by_year[s.year] += confusion(std::span<const ScoredSample>(&s, 1), threshold);
    std::vector<YearBucket> out;
    for (const auto& [year, conf] : by_year) {
        YearBucket b;
        b.year = year;
        b.confusion = conf;
        b.count = conf.total();
        b.f1 = f1_macro(conf);
        b.sparse = b.count < min_count;
        out.push_back(b);
    }
    return out;
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty())
        throw UndefinedMetric("quantile of an empty range");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxSummary summarize(std::span<const double> values) {
    if (values.empty())
        throw UndefinedMetric("summary of an empty range");
    std::vector<double> s(values.begin(), values.end());
    std::sort(s.begin(), s.end());
    BoxSummary b;
    b.count = s.size();
    b.min = s.front();
    b.max = s.back();
    b.q1 = quantile_sorted(s, 0.25);
    b.median = quantile_sorted(s, 0.5);
    b.q3 = quantile_sorted(s, 0.75);
    b.mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    const double iqr = b.q3 - b.q1;
    const double lo_fence = b.q1 - 1.5 * iqr;
    const double hi_fence = b.q3 + 1.5 * iqr;
    b.whisker_low = *std::lower_bound(s.begin(), s.end(), lo_fence);
    b.whisker_high = *std::prev(std::upper_bound(s.begin(), s.end(), hi_fence));
    return b;
}

std::vector<DistributionRow> feature_distributions(const Matrix& features,
                                                   std::span<const int> labels,
                                                   std::span<const std::string> names) {
    if (features.rows == 0)
        throw UndefinedMetric("feature distributions of an empty table");
    if (features.rows != labels.size() || features.cols != names.size())
        throw Error("feature table shape does not match labels/names");
    std::set<int> classes(labels.begin(), labels.end());
    std::vector<DistributionRow> out;
    for (std::size_t j = 0; j < names.size(); ++j) {
        for (int cls : classes) {
            std::vector<double> column;
            for (std::size_t i = 0; i < features.rows; ++i)
                if (labels[i] == cls)
                    column.push_back(features(i, j));
            out.push_back({names[j], cls, summarize(column)});
        }
    }
    return out;
}

void save_curve_csv(const std::filesystem::path& path, std::string_view header,
                    std::span<const CurvePoint> points) {
    auto out = open_csv(path);
    out << header << '\n';
    for (const auto& p : points)
        out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

void save_f1_by_year_csv(const std::filesystem::path& path, std::span<const YearBucket> buckets) {
    auto out = open_csv(path);
    out << "year,f1,count\n";
    for (const auto& b : buckets)
        out << b.year << ',' << format_double(b.f1) << ',' << b.count << '\n';
}

void save_feature_dist_csv(const std::filesystem::path& path,
                           std::span<const DistributionRow> rows) {
    auto out = open_csv(path);
    out << "feature,class,min,q1,median,q3,max,mean\n";
    for (const auto& r : rows) {
        const auto& s = r.summary;
        out << r.feature << ',' << r.label << ',' << format_double(s.min) << ','
            << format_double(s.q1) << ',' << format_double(s.median) << ','
            << format_double(s.q3) << ',' << format_double(s.max) << ','
            << format_double(s.mean) << '\n';
    }
}

} // namespace laurel
