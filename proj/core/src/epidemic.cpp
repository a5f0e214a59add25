#include "flatcurve/epidemic.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace flatcurve {

std::uint64_t DistanceHistogram::total_mass() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint32_t DistanceHistogram::max_distance() const {
    for (std::size_t d = counts.size(); d-- > 0;)
        if (counts[d] > 0) return static_cast<std::uint32_t>(d);
    return 0;
}

IsolationResult isolate(const Graph& g, std::span<const NodeId> selected) {
    const NodeId n = g.node_count();
    std::vector<bool> removed(n, false);
    NodeId removed_count = 0;
    for (NodeId v : selected) {
        if (v >= n) throw std::invalid_argument("isolate: selected node out of range");
        if (!removed[v]) {
            removed[v] = true;
            ++removed_count;
        }
    }
    if (removed_count == n)
        throw std::invalid_argument("isolate: cannot remove every node");

    std::vector<NodeId> kept;
    kept.reserve(n - removed_count);
    std::vector<NodeId> old_to_new(n, IsolationResult::kRemoved);
    for (NodeId v = 0; v < n; ++v) {
        if (!removed[v]) {
            old_to_new[v] = static_cast<NodeId>(kept.size());
            kept.push_back(v);
        }
    }

    Graph sub(static_cast<NodeId>(kept.size()));
    for (NodeId new_u = 0; new_u < kept.size(); ++new_u) {
        for (NodeId old_v : g.neighbors(kept[new_u])) {
            const NodeId new_v = old_to_new[old_v];
            if (new_v != IsolationResult::kRemoved && new_u < new_v)
                sub.add_edge(new_u, new_v);
        }
    }
    return IsolationResult{std::move(sub), std::move(kept), std::move(old_to_new)};
}

std::vector<std::uint64_t> spread_from(const Graph& g, NodeId source) {
    const DistanceVector d = bfs_distances(g, source);
    std::vector<std::uint64_t> levels;
    for (NodeId v = 0; v < d.size(); ++v) {
        const auto dist = d.distance(v);
        if (!dist || *dist == 0) continue;
        if (*dist > levels.size()) levels.resize(*dist, 0);
        ++levels[*dist - 1];
    }
    return levels;
}

DistanceHistogram distance_histogram(const Graph& g, NodeId source) {
    const std::vector<std::uint64_t> levels = spread_from(g, source);
    DistanceHistogram h;
    h.trials = 1;
    h.counts.assign(levels.size() + 1, 0);
    std::uint64_t reached = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        h.counts[i + 1] = levels[i];
        reached += levels[i];
    }
    h.unreachable_total = g.node_count() - 1 - reached;
    return h;
}

DistanceHistogram spread_with_isolation(const Graph& g, const IsolationPolicy& policy,
                                        SplitMix64& rng) {
    if (!policy.measure && policy.fraction > 0.0)
        throw std::invalid_argument(
            "spread_with_isolation: measure \"none\" is only valid with fraction 0");
    if (!(policy.fraction >= 0.0 && policy.fraction < 1.0))
        throw std::invalid_argument("spread_with_isolation: fraction must lie in [0, 1)");

    if (policy.measure && policy.fraction > 0.0) {
        const CentralityScores scores = compute_scores(g, *policy.measure);
        const Ranking ranking = rank_top_fraction(scores, policy.fraction);
        const IsolationResult iso = isolate(g, ranking.selected);
        if (iso.graph.node_count() == 0)
            throw std::runtime_error("spread_with_isolation: no susceptible nodes remain");
        const NodeId source =
            static_cast<NodeId>(rng.uniform_index(iso.graph.node_count()));
        return distance_histogram(iso.graph, source);
    }

    const NodeId source = static_cast<NodeId>(rng.uniform_index(g.node_count()));
    return distance_histogram(g, source);
}

DistanceHistogram run_trial(NodeId n, NodeId k, double beta,
                            const IsolationPolicy& policy, std::uint64_t trial_seed) {
    SplitMix64 rng(trial_seed);
    const Graph g = watts_strogatz(n, k, beta, rng);
    return spread_with_isolation(g, policy, rng);
}

DistanceHistogram aggregate(std::span<const DistanceHistogram> histograms) {
    if (histograms.empty())
        throw std::invalid_argument("aggregate: need at least one histogram");
    DistanceHistogram out;
    for (const DistanceHistogram& h : histograms) {
        if (h.counts.size() > out.counts.size()) out.counts.resize(h.counts.size(), 0);
        for (std::size_t d = 0; d < h.counts.size(); ++d) out.counts[d] += h.counts[d];
        out.trials += h.trials;
        out.unreachable_total += h.unreachable_total;
    }
    return out;
}

std::pair<std::uint32_t, std::uint64_t> peak(const DistanceHistogram& h) {
    std::uint32_t best_d = 0;
    std::uint64_t best_count = 0;
    for (std::size_t d = 1; d < h.counts.size(); ++d) {
        if (h.counts[d] > best_count) {
            best_count = h.counts[d];
            best_d = static_cast<std::uint32_t>(d);
        }
    }
    if (best_count == 0) throw std::invalid_argument("peak: histogram has no mass");
    return {best_d, best_count};
}

std::vector<std::pair<std::uint32_t, double>> normalize(const DistanceHistogram& h) {
    const std::uint64_t total = h.total_mass();
    if (total == 0) throw std::invalid_argument("normalize: histogram has no mass");
    std::vector<std::pair<std::uint32_t, double>> pmf;
    for (std::size_t d = 1; d < h.counts.size(); ++d)
        if (h.counts[d] > 0)
            pmf.emplace_back(static_cast<std::uint32_t>(d),
                             static_cast<double>(h.counts[d]) / static_cast<double>(total));
    return pmf;
}

void write_histogram_csv(const DistanceHistogram& h, const std::string& fingerprint,
                         std::ostream& out) {
    out << "# trials=" << h.trials << " unreachable_total=" << h.unreachable_total << "\n";
    if (!fingerprint.empty()) out << "# config " << fingerprint << "\n";
    out << "distance,count\n";
    for (std::size_t d = 1; d < h.counts.size(); ++d)
        if (h.counts[d] > 0) out << d << "," << h.counts[d] << "\n";
}

} // namespace flatcurve
