#include "flatcurve/generators.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace flatcurve {

void WsParams::validate() const {
    if (n == 0) throw std::invalid_argument("WsParams: n must be >= 1");
    if (k % 2 != 0) throw std::invalid_argument("WsParams: k must be even, got " + std::to_string(k));
    if (k < 2 || k >= n)
        throw std::invalid_argument("WsParams: need 2 <= k < n, got k=" + std::to_string(k) +
                                    " n=" + std::to_string(n));
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::invalid_argument("WsParams: beta must lie in [0, 1]");
}

Graph ring_lattice(NodeId n, NodeId k) {
    WsParams{n, k, 0.0, 0}.validate();
    Graph g(n);
    const NodeId half = k / 2;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 1; j <= half; ++j)
            g.add_edge(i, (i + j) % n);
    return g;
}

Graph watts_strogatz(NodeId n, NodeId k, double beta, SplitMix64& rng) {
    WsParams{n, k, beta, 0}.validate();

    // Work on sets so membership checks during resampling stay cheap.
    std::vector<std::set<NodeId>> adj(n);
    const NodeId half = k / 2;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 1; j <= half; ++j) {
            const NodeId t = (i + j) % n;
            adj[i].insert(t);
            adj[t].insert(i);
        }
    }

    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 1; j <= half; ++j) {
            const NodeId old_target = (i + j) % n;
            if (rng.uniform01() >= beta) continue;
            for (NodeId attempt = 0; attempt < n; ++attempt) {
                const NodeId t = static_cast<NodeId>(rng.uniform_index(n));
                if (t == i || adj[i].count(t)) continue;
                adj[i].erase(old_target);
                adj[old_target].erase(i);
                adj[i].insert(t);
                adj[t].insert(i);
                break;
            }
            // all attempts collided: the original edge stays
        }
    }

    Graph g(n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId t : adj[i])
            if (i < t) g.add_edge(i, t);
    return g;
}

Graph watts_strogatz(const WsParams& params) {
    params.validate();
    SplitMix64 rng(params.seed);
    return watts_strogatz(params.n, params.k, params.beta, rng);
}

Graph erdos_renyi(NodeId n, double p, SplitMix64& rng) {
    if (n == 0) throw std::invalid_argument("erdos_renyi: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("erdos_renyi: p must lie in [0, 1]");
    Graph g(n);
    for (NodeId u = 0; u + 1 < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (rng.uniform01() < p) g.add_edge(u, v);
    return g;
}

} // namespace flatcurve
