#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "flatcurve/graph.hpp"

namespace flatcurve {

enum class Measure {
    Degree,
    Betweenness,
    Closeness,
    Katz,
    PageRank,
    ExpectedForce,
    Eigenvector,
};

/// Canonical lowercase names used in configs and on the CLI:
/// degree | betweenness | closeness | katz | pagerank | exf | eigenvector.
std::string_view to_string(Measure m);
std::optional<Measure> measure_from_string(std::string_view name);

/// Per-node scores plus the parameters the computation actually used.
struct CentralityScores {
    Measure measure = Measure::Degree;
    std::vector<double> scores;
    double attenuation = 0.0; ///< Katz alpha
    double offset = 0.0;      ///< Katz beta0
    double damping = 0.0;     ///< PageRank d
    int iterations = 0;       ///< iterations used by iterative solvers
    double residual = 0.0;    ///< residual at the final iteration
};

/// score(v) = deg(v).
CentralityScores degree_scores(const Graph& g);

/// Shortest-path betweenness over unordered pairs, unnormalized
/// (Brandes accumulation over per-source BFS DAGs).
CentralityScores betweenness_scores(const Graph& g);

/// score(v) = 1 / sum of distances to the nodes v can reach; a node that
/// reaches nobody scores 0. On disconnected graphs the sum runs over the
/// node's own component only.
CentralityScores closeness_scores(const Graph& g);

/// Katz: x = alpha*A*x + offset*1, iterated to an infinity-norm residual
/// below 1e-10. Default alpha is 0.9 / lambda_max with lambda_max estimated
/// by power iteration; alpha >= 1/lambda_max is rejected.
CentralityScores katz_scores(const Graph& g,
                             std::optional<double> attenuation = std::nullopt,
                             double offset = 1.0);

/// Damped random walk on the undirected graph; degree-0 nodes redistribute
/// uniformly. L1-normalized, iterated to an L1 residual below 1e-10.
CentralityScores pagerank_scores(const Graph& g, double damping = 0.85);

/// score(i) = sum over neighbors j of deg(i)*deg(j), divided by n(n-1)/2.
/// Requires n >= 2.
CentralityScores expected_force_scores(const Graph& g);

/// Leading eigenvector of the adjacency matrix, L2-normalized and entrywise
/// nonnegative, from power iteration started at the uniform positive vector.
/// Rejects edgeless graphs; reports non-convergence instead of returning a
/// stale vector.
CentralityScores eigenvector_scores(const Graph& g);

/// Dispatch by measure with each measure's default parameters.
CentralityScores compute_scores(const Graph& g, Measure m);

/// Largest adjacency eigenvalue (power-iteration estimate; 0 for an
/// edgeless graph).
double spectral_radius_estimate(const Graph& g);

/// Deterministic top-fraction selection: descending score, ties broken by
/// ascending node id.
struct Ranking {
    std::vector<NodeId> order;    ///< all nodes, best first
    std::vector<NodeId> selected; ///< first floor(fraction * n) of order, sorted by id
};
Ranking rank_top_fraction(const CentralityScores& scores, double fraction);

} // namespace flatcurve
