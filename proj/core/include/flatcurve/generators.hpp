#pragma once

#include <cstdint>

#include "flatcurve/graph.hpp"
#include "flatcurve/rng.hpp"

namespace flatcurve {

/// Parameters of one Watts-Strogatz graph. k is the mean degree: the base
/// ring connects every node to its k/2 nearest neighbors on each side.
struct WsParams {
    NodeId n = 0;
    NodeId k = 0;              ///< even, 2 <= k < n
    double beta = 0.0;         ///< rewiring probability in [0, 1]
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on any violated constraint.
    void validate() const;
};

/// Ring lattice: node i adjacent to i±1, ..., i±k/2 (mod n).
/// Exactly n*k/2 edges, every degree equal to k.
Graph ring_lattice(NodeId n, NodeId k);

/// Watts-Strogatz rewiring of the ring lattice.
///
/// Nodes are visited in id order; for each node the k/2 edges to its
/// rightmost ring neighbors (offset 1, then 2, ...) are considered in turn.
/// With probability beta the far endpoint is replaced by a uniformly random
/// node, resampling on self-loops and existing edges; after n failed draws
/// the original edge is kept. One probability draw is consumed per edge, so
/// the stream layout is fixed and runs reproduce bit-for-bit from the seed.
/// Edge count is conserved: always n*k/2. beta = 0 reproduces ring_lattice
/// exactly.
Graph watts_strogatz(NodeId n, NodeId k, double beta, SplitMix64& rng);
Graph watts_strogatz(const WsParams& params);

/// G(n, p): each unordered pair independently linked with probability p,
/// pairs scanned in lexicographic order.
Graph erdos_renyi(NodeId n, double p, SplitMix64& rng);

} // namespace flatcurve
