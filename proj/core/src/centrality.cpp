#include "flatcurve/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "flatcurve/errors.hpp"

namespace flatcurve {

namespace {

constexpr int kIterationCap = 100000;
constexpr double kResidualTol = 1e-10;

std::vector<double> adjacency_multiply(const Graph& g, const std::vector<double>& x) {
    std::vector<double> y(x.size(), 0.0);
    for (NodeId u = 0; u < g.node_count(); ++u) {
        double acc = 0.0;
        for (NodeId v : g.neighbors(u)) acc += x[v];
        y[u] = acc;
    }
    return y;
}

} // namespace

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::Degree: return "degree";
        case Measure::Betweenness: return "betweenness";
        case Measure::Closeness: return "closeness";
        case Measure::Katz: return "katz";
        case Measure::PageRank: return "pagerank";
        case Measure::ExpectedForce: return "exf";
        case Measure::Eigenvector: return "eigenvector";
    }
    return "unknown";
}

std::optional<Measure> measure_from_string(std::string_view name) {
    if (name == "degree") return Measure::Degree;
    if (name == "betweenness") return Measure::Betweenness;
    if (name == "closeness") return Measure::Closeness;
    if (name == "katz") return Measure::Katz;
    if (name == "pagerank") return Measure::PageRank;
    if (name == "exf") return Measure::ExpectedForce;
    if (name == "eigenvector") return Measure::Eigenvector;
    return std::nullopt;
}

CentralityScores degree_scores(const Graph& g) {
    CentralityScores out;
    out.measure = Measure::Degree;
    out.scores.resize(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        out.scores[v] = static_cast<double>(g.degree(v));
    return out;
}

CentralityScores betweenness_scores(const Graph& g) {
    const NodeId n = g.node_count();
    CentralityScores out;
    out.measure = Measure::Betweenness;
    out.scores.assign(n, 0.0);

    std::vector<std::uint32_t> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<NodeId> order; // BFS visit order
    order.reserve(n);

    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), DistanceVector::kUnreachable);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const NodeId u = order[head];
            for (NodeId w : g.neighbors(u)) {
                if (dist[w] == DistanceVector::kUnreachable) {
                    dist[w] = dist[u] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
            }
        }

        // Dependency accumulation in reverse BFS order.
        for (std::size_t idx = order.size(); idx-- > 1;) {
            const NodeId w = order[idx];
            for (NodeId v : g.neighbors(w)) {
                if (dist[v] + 1 == dist[w])
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            out.scores[w] += delta[w];
        }
    }

    // Each unordered pair was accumulated from both endpoints.
    for (double& x : out.scores) x /= 2.0;
    return out;
}

CentralityScores closeness_scores(const Graph& g) {
    const NodeId n = g.node_count();
    CentralityScores out;
    out.measure = Measure::Closeness;
    out.scores.assign(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        const DistanceVector d = bfs_distances(g, v);
        std::uint64_t sum = 0;
        for (NodeId u = 0; u < n; ++u)
            if (u != v && d.reachable(u)) sum += *d.distance(u);
        out.scores[v] = sum > 0 ? 1.0 / static_cast<double>(sum) : 0.0;
    }
    return out;
}

double spectral_radius_estimate(const Graph& g) {
    const NodeId n = g.node_count();
    if (g.edge_count() == 0) return 0.0;

    // Power iteration on A + I: the shift separates the Perron root from a
    // possible -lambda partner on bipartite graphs.
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double lambda = 0.0;
    for (int it = 0; it < kIterationCap; ++it) {
        std::vector<double> y = adjacency_multiply(g, x);
        double rayleigh = 0.0;
        for (NodeId v = 0; v < n; ++v) rayleigh += x[v] * y[v];
        for (NodeId v = 0; v < n; ++v) y[v] += x[v];
        const double norm = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
        for (double& e : y) e /= norm;
        double diff = 0.0;
        for (NodeId v = 0; v < n; ++v) diff = std::max(diff, std::abs(y[v] - x[v]));
        x = std::move(y);
        if (diff < kResidualTol && it > 2) return rayleigh;
        lambda = rayleigh;
    }
    return lambda;
}

CentralityScores katz_scores(const Graph& g, std::optional<double> attenuation,
                             double offset) {
    const NodeId n = g.node_count();
    const double lambda = spectral_radius_estimate(g);

    double alpha;
    if (attenuation) {
        alpha = *attenuation;
        if (lambda > 0.0 && alpha >= 1.0 / lambda)
            throw std::invalid_argument(
                "katz_scores: attenuation " + std::to_string(alpha) +
                " >= 1/lambda_max = " + std::to_string(1.0 / lambda));
        if (alpha < 0.0) throw std::invalid_argument("katz_scores: attenuation must be >= 0");
    } else {
        alpha = lambda > 0.0 ? 0.9 / lambda : 0.0;
    }

    CentralityScores out;
    out.measure = Measure::Katz;
    out.attenuation = alpha;
    out.offset = offset;
    out.scores.assign(n, offset);

    for (int it = 1; it <= kIterationCap; ++it) {
        std::vector<double> next = adjacency_multiply(g, out.scores);
        for (NodeId v = 0; v < n; ++v) next[v] = alpha * next[v] + offset;
        double diff = 0.0;
        for (NodeId v = 0; v < n; ++v) diff = std::max(diff, std::abs(next[v] - out.scores[v]));
        out.scores = std::move(next);
        out.iterations = it;
        out.residual = diff;
        if (diff < kResidualTol) return out;
    }
    throw ConvergenceError("katz_scores: no convergence within " +
                           std::to_string(kIterationCap) + " iterations");
}

CentralityScores pagerank_scores(const Graph& g, double damping) {
    if (!(damping > 0.0 && damping < 1.0))
        throw std::invalid_argument("pagerank_scores: damping must lie in (0, 1)");
    const NodeId n = g.node_count();

    CentralityScores out;
    out.measure = Measure::PageRank;
    out.damping = damping;
    out.scores.assign(n, 1.0 / n);

    for (int it = 1; it <= kIterationCap; ++it) {
        std::vector<double> next(n, 0.0);
        double dangling = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            const auto nb = g.neighbors(u);
            if (nb.empty()) {
                dangling += out.scores[u];
                continue;
            }
            const double share = out.scores[u] / static_cast<double>(nb.size());
            for (NodeId v : nb) next[v] += share;
        }
        const double base = (1.0 - damping) / n + damping * dangling / n;
        double diff = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            next[v] = damping * next[v] + base;
            diff += std::abs(next[v] - out.scores[v]);
        }
        out.scores = std::move(next);
        out.iterations = it;
        out.residual = diff;
        if (diff < kResidualTol) {
            const double total = std::accumulate(out.scores.begin(), out.scores.end(), 0.0);
            for (double& x : out.scores) x /= total;
            return out;
        }
    }
    throw ConvergenceError("pagerank_scores: no convergence within " +
                           std::to_string(kIterationCap) + " iterations");
}

CentralityScores expected_force_scores(const Graph& g) {
    const NodeId n = g.node_count();
    if (n < 2) throw std::invalid_argument("expected_force_scores: need n >= 2");
    const double possible_edges = static_cast<double>(n) * (n - 1) / 2.0;

    CentralityScores out;
    out.measure = Measure::ExpectedForce;
    out.scores.assign(n, 0.0);
    for (NodeId i = 0; i < n; ++i) {
        const double di = static_cast<double>(g.degree(i));
        double acc = 0.0;
        for (NodeId j : g.neighbors(i)) acc += di * static_cast<double>(g.degree(j));
        out.scores[i] = acc / possible_edges;
    }
    return out;
}

CentralityScores eigenvector_scores(const Graph& g) {
    const NodeId n = g.node_count();
    if (g.edge_count() == 0)
        throw std::invalid_argument("eigenvector_scores: graph has no edges");

    CentralityScores out;
    out.measure = Measure::Eigenvector;
    out.scores.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));

    // Iterate on A + I; see spectral_radius_estimate for why the shift.
    for (int it = 1; it <= kIterationCap; ++it) {
        std::vector<double> next = adjacency_multiply(g, out.scores);
        for (NodeId v = 0; v < n; ++v) next[v] += out.scores[v];
        const double norm =
            std::sqrt(std::inner_product(next.begin(), next.end(), next.begin(), 0.0));
        for (double& x : next) x /= norm;
        double diff = 0.0;
        for (NodeId v = 0; v < n; ++v) diff = std::max(diff, std::abs(next[v] - out.scores[v]));
        out.scores = std::move(next);
        out.iterations = it;
        out.residual = diff;
        if (diff < kResidualTol) {
            for (double& x : out.scores)
                if (x < 0.0) x = 0.0; // clamp ulp-level negatives
            return out;
        }
    }
    throw ConvergenceError("eigenvector_scores: no convergence within " +
                           std::to_string(kIterationCap) + " iterations");
}

CentralityScores compute_scores(const Graph& g, Measure m) {
    switch (m) {
        case Measure::Degree: return degree_scores(g);
        case Measure::Betweenness: return betweenness_scores(g);
        case Measure::Closeness: return closeness_scores(g);
        case Measure::Katz: return katz_scores(g);
        case Measure::PageRank: return pagerank_scores(g);
        case Measure::ExpectedForce: return expected_force_scores(g);
        case Measure::Eigenvector: return eigenvector_scores(g);
    }
    throw std::invalid_argument("compute_scores: unknown measure");
}

Ranking rank_top_fraction(const CentralityScores& scores, double fraction) {
    if (!(fraction >= 0.0 && fraction < 1.0))
        throw std::invalid_argument("rank_top_fraction: fraction must lie in [0, 1)");
    const NodeId n = static_cast<NodeId>(scores.scores.size());

    Ranking r;
    r.order.resize(n);
    std::iota(r.order.begin(), r.order.end(), NodeId{0});
    std::stable_sort(r.order.begin(), r.order.end(), [&](NodeId a, NodeId b) {
        if (scores.scores[a] != scores.scores[b]) return scores.scores[a] > scores.scores[b];
        return a < b;
    });

    // Small slack absorbs representation error in fraction * n
    // (0.3 * 10 evaluates below 3.0 in binary floating point).
    const auto take = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(n) + 1e-9));
    r.selected.assign(r.order.begin(), r.order.begin() + take);
    std::sort(r.selected.begin(), r.selected.end());
    return r;
}

} // namespace flatcurve
