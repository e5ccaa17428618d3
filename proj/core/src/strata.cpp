#include "laurel/strata.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "laurel/errors.hpp"
#include "random.hpp"

namespace laurel {

std::size_t DistanceStrata::stratum_size(std::uint32_t a) const {
    auto it = strata.find(a);
    return it == strata.end() ? 0 : it->second.size();
}

double DistanceStrata::sampling_weight(NodeIndex v) const {
    const auto a = distance.at(v);
    if (a == 0)
        return 0.0;
    return 1.0 / static_cast<double>(stratum_size(a));
}

DistanceStrata distances_to_winners(const CitationGraph& graph) {
    const NodeIndex n = graph.node_count();
    DistanceStrata out;
    out.distance.assign(n, kUnreachable);

    std::vector<NodeIndex> queue;
    for (NodeIndex v = 0; v < n; ++v) {
        if (graph.is_winner(v)) {
            out.distance[v] = 0;
            queue.push_back(v);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeIndex v = queue[head];
        const auto next = out.distance[v] + 1;
        for (NodeIndex u : graph.in_neighbors(v)) {
            if (out.distance[u] == kUnreachable) {
                out.distance[u] = next;
                queue.push_back(u);
            }
        }
    }
    for (NodeIndex v = 0; v < n; ++v)
        if (out.distance[v] != 0)
            out.strata[out.distance[v]].push_back(v);
    return out;
}

std::vector<NodeIndex> stratified_sample(const DistanceStrata& strata,
                                         std::span<const NodeIndex> winners,
                                         std::size_t target_n, std::uint64_t seed) {
    if (target_n < winners.size())
        throw Error("sample size " + std::to_string(target_n) + " is smaller than the " +
                    std::to_string(winners.size()) + " winners");
    if (target_n > strata.node_count())
        throw Error("sample size " + std::to_string(target_n) + " exceeds node count " +
                    std::to_string(strata.node_count()));

    std::size_t available = 0;
    for (const auto& [a, members] : strata.strata)
        available += members.size();
    std::size_t remaining = target_n - winners.size();
    if (remaining > available)
        throw Error("not enough non-winners to fill the sample");

    std::vector<NodeIndex> result(winners.begin(), winners.end());

    // Per-stratum inclusion probability k / (#strata * |S_a|); strata whose
    // probability would reach 1 are taken whole and the rest re-solved.
    std::vector<const std::vector<NodeIndex>*> open;
    for (const auto& [a, members] : strata.strata)
        if (!members.empty())
            open.push_back(&members);
    bool changed = true;
    while (changed && remaining > 0) {
        changed = false;
        const double share = static_cast<double>(remaining) / static_cast<double>(open.size());
        for (auto it = open.begin(); it != open.end();) {
            if (share >= static_cast<double>((*it)->size())) {
                result.insert(result.end(), (*it)->begin(), (*it)->end());
                remaining -= (*it)->size();
                it = open.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }

    if (remaining > 0) {
        const double share = static_cast<double>(remaining) / static_cast<double>(open.size());
        struct Unit {
            NodeIndex node;
            double pi;
        };
        std::vector<Unit> units;
        for (const auto* members : open) {
            const double pi = share / static_cast<double>(members->size());
            for (NodeIndex v : *members)
                units.push_back({v, pi});
        }

        detail::Rng rng(seed);
        detail::shuffle(std::span<Unit>(units), rng);

        // Systematic sampling over the shuffled order: exact inclusion
        // probabilities, no duplicates while every pi < 1.
        double total = 0.0;
        for (const auto& u : units)
            total += u.pi;
        const double scale = static_cast<double>(remaining) / total;
        const double start = detail::uniform01(rng);
        double cumulative = 0.0;
        std::size_t next = 0;
        for (std::size_t i = 0; i < units.size() && next < remaining; ++i) {
            cumulative = (i + 1 == units.size()) ? static_cast<double>(remaining)
                                                 : cumulative + units[i].pi * scale;
            bool taken = false;
            while (next < remaining && start + static_cast<double>(next) < cumulative) {
                if (taken)
                    throw std::logic_error("systematic sampling selected a unit twice");
                result.push_back(units[i].node);
                taken = true;
                ++next;
            }
        }
        if (next != remaining)
            throw std::logic_error("systematic sampling produced the wrong sample size");
    }

    std::sort(result.begin(), result.end());
    return result;
}

} // namespace laurel
