#include <doctest.h>

#include <stdexcept>

#include "flatcurve/generators.hpp"
#include "flatcurve/metrics.hpp"
#include "oracles.hpp"

using namespace flatcurve;

namespace {

bool same_graph(const Graph& a, const Graph& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
    for (NodeId v = 0; v < a.node_count(); ++v) {
        const auto na = a.neighbors(v);
        const auto nb = b.neighbors(v);
        if (!std::equal(na.begin(), na.end(), nb.begin(), nb.end())) return false;
    }
    return true;
}

} // namespace

TEST_SUITE("generators") {

TEST_CASE("ring lattice shape") {
    const Graph c6 = ring_lattice(6, 2);
    CHECK(c6.edge_count() == 6);
    for (NodeId v = 0; v < 6; ++v) {
        CHECK(c6.degree(v) == 2);
        CHECK(c6.has_edge(v, (v + 1) % 6));
    }

    const Graph big = ring_lattice(500, 6);
    CHECK(big.edge_count() == 1500);
    for (NodeId v = 0; v < 500; ++v) CHECK(big.degree(v) == 6);
}

TEST_CASE("ring lattice clustering matches the closed form") {
    CHECK(global_clustering(ring_lattice(60, 6)) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("ring lattice parameter validation") {
    CHECK_THROWS_AS(ring_lattice(10, 3), std::invalid_argument);  // odd k
    CHECK_THROWS_AS(ring_lattice(6, 6), std::invalid_argument);   // k >= n
    CHECK_THROWS_AS(ring_lattice(10, 0), std::invalid_argument);
}

TEST_CASE("ws with beta 0 is exactly the lattice") {
    const Graph ws = watts_strogatz({40, 6, 0.0, 123});
    CHECK(same_graph(ws, ring_lattice(40, 6)));
}

TEST_CASE("ws conserves the edge count at every beta") {
    for (double beta : {0.0, 0.1, 0.5, 1.0}) {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            const Graph g = watts_strogatz({64, 4, beta, seed});
            CHECK(g.edge_count() == 64 * 4 / 2);
            for (NodeId v = 0; v < g.node_count(); ++v) {
                for (NodeId w : g.neighbors(v)) CHECK(w != v);
                // each node keeps its own k/2 outgoing ring slots
                CHECK(g.degree(v) >= 2);
            }
        }
    }
}

TEST_CASE("ws is reproducible from the seed") {
    const WsParams p{50, 4, 0.3, 99};
    CHECK(same_graph(watts_strogatz(p), watts_strogatz(p)));

    const Graph other = watts_strogatz({50, 4, 0.3, 100});
    CHECK_FALSE(same_graph(watts_strogatz(p), other));
}

TEST_CASE("ws parameter validation propagates") {
    CHECK_THROWS_AS(watts_strogatz({10, 4, -0.1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(watts_strogatz({10, 4, 1.5, 0}), std::invalid_argument);
    CHECK_THROWS_AS(watts_strogatz({10, 5, 0.5, 0}), std::invalid_argument);
}

TEST_CASE("fully rewired ws approaches random-graph clustering") {
    // k/(n-1) = 6/499, band wide enough for 50-seed noise
    double mean_c = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed)
        mean_c += global_clustering(watts_strogatz({500, 6, 1.0, seed}));
    mean_c /= 50.0;
    CHECK(std::abs(mean_c - 6.0 / 499.0) < 0.01);
}

TEST_CASE("erdos renyi endpoints") {
    SplitMix64 rng(7);
    CHECK(erdos_renyi(30, 0.0, rng).edge_count() == 0);
    CHECK(erdos_renyi(30, 1.0, rng).edge_count() == 30 * 29 / 2);
    CHECK_THROWS_AS(erdos_renyi(30, -0.01, rng), std::invalid_argument);
    CHECK_THROWS_AS(erdos_renyi(30, 1.01, rng), std::invalid_argument);
}

TEST_CASE("erdos renyi mean degree tracks the binomial expectation") {
    // expectation p(n-1) = 9.99 at n=1000, p=0.01
    double mean_degree = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(mix_seed(404, seed));
        const Graph g = erdos_renyi(1000, 0.01, rng);
        mean_degree += 2.0 * static_cast<double>(g.edge_count()) / 1000.0;
    }
    mean_degree /= 20.0;
    CHECK(mean_degree == doctest::Approx(9.99).epsilon(0.05));
}

} // TEST_SUITE
