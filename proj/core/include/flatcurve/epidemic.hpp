#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flatcurve/centrality.hpp"
#include "flatcurve/generators.hpp"
#include "flatcurve/graph.hpp"
#include "flatcurve/rng.hpp"

namespace flatcurve {

/// Counts of nodes by hop distance from the seed, aggregated over trials.
/// The seed itself (distance 0) is never binned; nodes a trial could not
/// reach are tallied in unreachable_total instead of being given a fake
/// finite distance.
struct DistanceHistogram {
    std::vector<std::uint64_t> counts; ///< counts[d] = nodes at distance d; index 0 stays 0
    std::uint64_t trials = 0;
    std::uint64_t unreachable_total = 0;

    std::uint64_t total_mass() const;
    std::uint32_t max_distance() const; ///< largest d with counts[d] > 0; 0 if empty
    std::uint64_t count_at(std::uint32_t d) const {
        return d < counts.size() ? counts[d] : 0;
    }
};

/// isolate() output: the induced subgraph on the non-selected nodes plus the
/// id maps between the two graphs.
struct IsolationResult {
    Graph graph;
    std::vector<NodeId> kept;       ///< new id -> old id, ascending
    std::vector<NodeId> old_to_new; ///< old id -> new id, or kRemoved
    static constexpr NodeId kRemoved = 0xFFFFFFFFu;
};

/// Remove the selected nodes and densely re-index the rest.
/// Rejects selecting every node.
IsolationResult isolate(const Graph& g, std::span<const NodeId> selected);

/// Per-iteration infection counts from source: element d-1 is the number of
/// nodes at hop distance exactly d (the source is excluded).
std::vector<std::uint64_t> spread_from(const Graph& g, NodeId source);

/// Single-graph histogram: spread_from bucketed per distance, trials = 1.
DistanceHistogram distance_histogram(const Graph& g, NodeId source);

/// Which nodes get quarantined before the seed is planted. measure unset
/// means no isolation and requires fraction == 0.
struct IsolationPolicy {
    std::optional<Measure> measure;
    double fraction = 0.0;
};

/// Apply the isolation policy to g (scores computed on the intact graph),
/// draw the seed uniformly among surviving nodes from rng, spread, and
/// return the single-trial histogram.
DistanceHistogram spread_with_isolation(const Graph& g, const IsolationPolicy& policy,
                                        SplitMix64& rng);

/// One Monte-Carlo trial: fresh Watts-Strogatz graph from trial_seed, then
/// spread_with_isolation on it. The trial's RNG stream is consumed by the
/// generator first and the seed draw second.
DistanceHistogram run_trial(NodeId n, NodeId k, double beta,
                            const IsolationPolicy& policy, std::uint64_t trial_seed);

/// Bin-wise sum; trials and unreachable totals add up.
DistanceHistogram aggregate(std::span<const DistanceHistogram> histograms);

/// Bin with the maximum count; ties resolve to the smaller distance.
/// Rejects histograms with no mass.
std::pair<std::uint32_t, std::uint64_t> peak(const DistanceHistogram& h);

/// Probability mass per distance (counts / total). Rejects empty histograms.
std::vector<std::pair<std::uint32_t, double>> normalize(const DistanceHistogram& h);

/// CSV with a "distance,count" body; the leading comment lines carry trials,
/// unreachable_total and the caller's config fingerprint.
void write_histogram_csv(const DistanceHistogram& h, const std::string& fingerprint,
                         std::ostream& out);

} // namespace flatcurve
