#include "laurel/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "laurel/errors.hpp"
#include "random.hpp"

namespace laurel {

namespace {

using detail::Rng;

std::vector<double> random_unit(Rng& rng, std::size_t dim) {
    std::vector<double> v(dim);
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (auto& x : v) {
            x = detail::normal(rng);
            n2 += x * x;
        }
    } while (n2 == 0.0);
    for (auto& x : v)
        x /= std::sqrt(n2);
    return v;
}

/// Unit vector with cosine `c` to the unit `axis`, its orthogonal part
/// pointing along `direction` projected off the axis.
std::vector<float> at_cosine(const std::vector<double>& axis, std::vector<double> direction,
                             double c) {
    double proj = 0.0;
    for (std::size_t k = 0; k < axis.size(); ++k)
        proj += axis[k] * direction[k];
    double n2 = 0.0;
    for (std::size_t k = 0; k < axis.size(); ++k) {
        direction[k] -= proj * axis[k];
        n2 += direction[k] * direction[k];
    }
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    std::vector<float> out(axis.size());
    for (std::size_t k = 0; k < axis.size(); ++k)
        out[k] = static_cast<float>(c * axis[k] + s * direction[k] / std::sqrt(n2));
    return out;
}

} // namespace

SynthCorpus generate_synthetic(const SynthConfig& cfg) {
    if (cfg.papers < 2 || cfg.dim < 2 || cfg.min_refs > cfg.max_refs || cfg.community_size == 0)
        throw Error("invalid synthetic corpus configuration");
    const auto n = cfg.papers;
    const auto first_candidate = static_cast<std::size_t>(cfg.background_fraction * double(n));
    if (cfg.winners > n - first_candidate)
        throw Error("too many winners for the synthetic corpus size");

    Rng rng(cfg.seed);
    const std::size_t communities = std::max<std::size_t>(1, n / cfg.community_size);

    std::vector<std::size_t> community(n);
    for (auto& c : community)
        c = detail::uniform_index(rng, communities);

    std::vector<std::uint8_t> winner(n, 0);
    {
        std::vector<std::size_t> candidates;
        for (std::size_t i = first_candidate; i < n; ++i)
            candidates.push_back(i);
        detail::shuffle(std::span<std::size_t>(candidates), rng);
        for (std::size_t k = 0; k < cfg.winners; ++k)
            winner[candidates[k]] = 1;
    }

    SynthCorpus out{{}, EmbeddingStore(cfg.dim)};
    out.records.reserve(n);

    std::vector<std::vector<std::size_t>> members(communities);  // earlier papers per community
    std::vector<std::size_t> earlier;
    auto clamp01 = [](double x) { return std::clamp(x, 0.0, 1.0); };

    for (std::size_t i = 0; i < n; ++i) {
        PaperRecord rec;
        rec.id = static_cast<PaperId>(i + 1);
        rec.award = winner[i] != 0;
        rec.year = cfg.first_year +
                   static_cast<std::int32_t>((static_cast<double>(i) / double(n)) *
                                             double(cfg.last_year - cfg.first_year + 1));
        rec.title = "Synthetic paper " + std::to_string(i + 1) + " on topic " +
                    std::to_string(community[i]);
        if (detail::uniform01(rng) >= cfg.missing_abstract_rate)
            rec.abstract = "Abstract of synthetic paper " + std::to_string(i + 1) + ".";

        double cohesion = cfg.background_cohesion;
        if (i >= first_candidate) {
            const double mean = winner[i] ? cfg.winner_cohesion : cfg.nonwinner_cohesion;
            cohesion = clamp01(mean + cfg.cohesion_sd * detail::normal(rng));
        }

        const auto want = std::min<std::size_t>(
            i, cfg.min_refs + detail::uniform_index(rng, cfg.max_refs - cfg.min_refs + 1));
        std::unordered_set<std::size_t> chosen;
        for (std::size_t attempt = 0; chosen.size() < want && attempt < want * 8; ++attempt) {
            const auto& own = members[community[i]];
            std::size_t pick;
            if (detail::uniform01(rng) < cohesion && !own.empty()) {
                pick = own[detail::uniform_index(rng, own.size())];
            } else {
                const auto& other = members[detail::uniform_index(rng, communities)];
                pick = other.empty() ? earlier[detail::uniform_index(rng, earlier.size())]
                                     : other[detail::uniform_index(rng, other.size())];
            }
            chosen.insert(pick);
        }
        std::vector<std::size_t> refs(chosen.begin(), chosen.end());
        std::sort(refs.begin(), refs.end());
        for (auto r : refs)
            rec.references.push_back(static_cast<PaperId>(r + 1));

        members[community[i]].push_back(i);
        earlier.push_back(i);
        out.records.push_back(std::move(rec));
    }

    // Embeddings.
    const auto axis = random_unit(rng, cfg.dim);
    std::vector<std::vector<double>> topics;
    for (std::size_t c = 0; c < communities; ++c)
        topics.push_back(random_unit(rng, cfg.dim));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> direction = topics[community[i]];
        for (auto& x : direction)
            x += 0.5 * detail::normal(rng) / std::sqrt(double(cfg.dim));
        double c;
        if (winner[i]) {
            c = cfg.winner_band_center +
                cfg.winner_band_halfwidth * (2.0 * detail::uniform01(rng) - 1.0);
        } else {
            c = std::clamp(cfg.nonwinner_cos_mean + cfg.nonwinner_cos_sd * detail::normal(rng),
                           -0.95, 0.95);
        }
        out.embeddings.add(out.records[i].id, at_cosine(axis, std::move(direction), c));
    }
    return out;
}

} // namespace laurel
