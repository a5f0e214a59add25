#pragma once

#include <cstdint>
#include <optional>

#include "flatcurve/graph.hpp"

namespace flatcurve {

/// Global clustering coefficient: 3 * triangles / connected triples.
/// Returns 0 on graphs with no triplet at all.
double global_clustering(const Graph& g);

/// Mean hop distance over ordered pairs (u, v), u != v, that can reach each
/// other. Pairs in different components are excluded from the mean but
/// reported through disconnected_fraction so the exclusion is never silent.
struct PathLength {
    bool defined = false;            ///< false when no connected pair exists
    double mean = 0.0;
    double disconnected_fraction = 0.0; ///< excluded pairs / all ordered pairs
};
PathLength characteristic_path_length(const Graph& g);

enum class ReferenceMode { Analytic, Empirical };

/// Reference clustering / path length of the equivalent random graph and
/// ring lattice used by the small-worldness indices.
struct ReferenceValues {
    double c_rand = 0.0;
    double l_rand = 0.0;
    double c_latt = 0.0;
    double l_latt = 0.0;
};

/// Analytic mode evaluates the closed forms
///   c_rand = k/(n-1), l_rand = ln(n)/ln(k),
///   c_latt = 3(k-2)/(4(k-1)), l_latt = n/(2k).
/// Empirical mode measures seed-averaged erdos_renyi(n, k/(n-1)) samples for
/// the random references and the (deterministic) ring lattice for the
/// lattice references. Requires k >= 2 (the log base degenerates otherwise).
ReferenceValues reference_values(NodeId n, NodeId k, ReferenceMode mode,
                                 std::uint64_t seed = 0, unsigned samples = 20);

/// The three small-worldness indices. An index whose denominator degenerates
/// is left unset rather than silently returned as NaN.
struct SmallWorldness {
    std::optional<double> s1;
    std::optional<double> s2;
    std::optional<double> s3;
};
SmallWorldness small_worldness(double clustering, double path_length,
                               const ReferenceValues& refs);

/// One-call bundle used by the experiment harness.
struct StructuralMetrics {
    double clustering = 0.0;
    PathLength path_length;
    SmallWorldness indices;
    ReferenceValues refs;
};
StructuralMetrics structural_metrics(const Graph& g, const ReferenceValues& refs);

} // namespace flatcurve
