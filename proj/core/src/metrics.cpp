#include "flatcurve/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flatcurve/generators.hpp"
#include "flatcurve/rng.hpp"

namespace flatcurve {

double global_clustering(const Graph& g) {
    const NodeId n = g.node_count();

    // Each unordered edge {u, v} contributes |N(u) ∩ N(v)| triangle
    // completions; summing over edges counts every triangle three times.
    std::uint64_t closed_paths = 0; // 3 * triangles, pre-factor folded in
    std::uint64_t triplets = 0;
    for (NodeId u = 0; u < n; ++u) {
        const auto nu = g.neighbors(u);
        const std::uint64_t d = nu.size();
        triplets += d * (d - 1) / 2;
        for (NodeId v : nu) {
            if (v < u) continue;
            const auto nv = g.neighbors(v);
            std::size_t a = 0, b = 0;
            while (a < nu.size() && b < nv.size()) {
                if (nu[a] == nv[b]) { ++closed_paths; ++a; ++b; }
                else if (nu[a] < nv[b]) ++a;
                else ++b;
            }
        }
    }
    if (triplets == 0) return 0.0;
    // closed_paths already equals 3 * triangles
    return static_cast<double>(closed_paths) / static_cast<double>(triplets);
}

PathLength characteristic_path_length(const Graph& g) {
    const NodeId n = g.node_count();
    PathLength result;
    if (n < 2) return result;

    std::uint64_t reachable_pairs = 0;
    std::uint64_t distance_sum = 0;
    for (NodeId s = 0; s < n; ++s) {
        const DistanceVector d = bfs_distances(g, s);
        reachable_pairs += d.reachable_count - 1;
        for (NodeId v = 0; v < n; ++v)
            if (v != s && d.reachable(v)) distance_sum += *d.distance(v);
    }

    const std::uint64_t all_pairs = static_cast<std::uint64_t>(n) * (n - 1);
    result.disconnected_fraction =
        static_cast<double>(all_pairs - reachable_pairs) / static_cast<double>(all_pairs);
    if (reachable_pairs == 0) return result;
    result.defined = true;
    result.mean = static_cast<double>(distance_sum) / static_cast<double>(reachable_pairs);
    return result;
}

ReferenceValues reference_values(NodeId n, NodeId k, ReferenceMode mode,
                                 std::uint64_t seed, unsigned samples) {
    if (k <= 1) throw std::invalid_argument("reference_values: k must be >= 2");
    WsParams{n, k, 0.0, 0}.validate();
    if (n < 3) throw std::invalid_argument("reference_values: n must be >= 3");

    ReferenceValues refs;
    if (mode == ReferenceMode::Analytic) {
        refs.c_rand = static_cast<double>(k) / static_cast<double>(n - 1);
        refs.l_rand = std::log(static_cast<double>(n)) / std::log(static_cast<double>(k));
        refs.c_latt = 3.0 * (k - 2.0) / (4.0 * (k - 1.0));
        refs.l_latt = static_cast<double>(n) / (2.0 * k);
        return refs;
    }

    if (samples == 0) throw std::invalid_argument("reference_values: samples must be >= 1");
    const double p = static_cast<double>(k) / static_cast<double>(n - 1);
    double c_sum = 0.0, l_sum = 0.0;
    unsigned l_defined = 0;
    for (unsigned i = 0; i < samples; ++i) {
        SplitMix64 rng(mix_seed(seed, i));
        const Graph er = erdos_renyi(n, p, rng);
        c_sum += global_clustering(er);
        const PathLength pl = characteristic_path_length(er);
        if (pl.defined) {
            l_sum += pl.mean;
            ++l_defined;
        }
    }
    refs.c_rand = c_sum / samples;
    refs.l_rand = l_defined > 0 ? l_sum / l_defined : 0.0;

    const Graph latt = ring_lattice(n, k);
    refs.c_latt = global_clustering(latt);
    refs.l_latt = characteristic_path_length(latt).mean;
    return refs;
}

SmallWorldness small_worldness(double clustering, double path_length,
                               const ReferenceValues& refs) {
    if (!std::isfinite(clustering) || !std::isfinite(path_length))
        throw std::invalid_argument("small_worldness: inputs must be finite");

    SmallWorldness sw;
    if (path_length != 0.0 && refs.c_rand != 0.0)
        sw.s1 = (clustering / path_length) * (refs.l_rand / refs.c_rand);
    if (path_length != 0.0 && refs.c_latt != 0.0)
        sw.s2 = refs.l_rand / path_length - clustering / refs.c_latt;
    if (refs.l_rand != refs.l_latt && refs.c_latt != refs.c_rand)
        sw.s3 = ((path_length - refs.l_latt) / (refs.l_rand - refs.l_latt)) *
                ((clustering - refs.c_rand) / (refs.c_latt - refs.c_rand));
    return sw;
}

StructuralMetrics structural_metrics(const Graph& g, const ReferenceValues& refs) {
    StructuralMetrics m;
    m.clustering = global_clustering(g);
    m.path_length = characteristic_path_length(g);
    m.refs = refs;
    if (m.path_length.defined)
        m.indices = small_worldness(m.clustering, m.path_length.mean, refs);
    return m;
}

} // namespace flatcurve
