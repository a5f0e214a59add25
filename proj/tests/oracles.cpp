#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

using flatcurve::Graph;
using flatcurve::NodeId;
using flatcurve::SplitMix64;

std::vector<std::vector<std::uint32_t>> all_pairs_relaxation(const Graph& g) {
    const NodeId n = g.node_count();
    std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n, kInf));
    for (NodeId v = 0; v < n; ++v) dist[v][v] = 0;

    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId s = 0; s < n; ++s)
            for (NodeId u = 0; u < n; ++u) {
                if (dist[s][u] == kInf) continue;
                for (NodeId w : g.neighbors(u)) {
                    if (dist[s][u] + 1 < dist[s][w]) {
                        dist[s][w] = dist[s][u] + 1;
                        changed = true;
                    }
                }
            }
    }
    return dist;
}

double clustering_triple_enumeration(const Graph& g) {
    const NodeId n = g.node_count();
    std::uint64_t closed = 0, triplets = 0;
    // Ordered middles: triple (a, m, b) with a < b counts once per middle m.
    for (NodeId m = 0; m < n; ++m)
        for (NodeId a = 0; a < n; ++a) {
            if (a == m || !g.has_edge(m, a)) continue;
            for (NodeId b = a + 1; b < n; ++b) {
                if (b == m || !g.has_edge(m, b)) continue;
                ++triplets;
                if (g.has_edge(a, b)) ++closed;
            }
        }
    return triplets == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triplets);
}

namespace {

// Enumerate every shortest s->t path, adding 1/sigma_st to each interior node.
void count_paths(const Graph& g, const std::vector<std::vector<std::uint32_t>>& dist,
                 NodeId s, NodeId t, std::vector<double>& through, double& sigma) {
    std::vector<NodeId> path{s};
    std::function<void(NodeId)> dfs = [&](NodeId u) {
        if (u == t) {
            sigma += 1.0;
            for (std::size_t i = 1; i + 1 < path.size(); ++i) through[path[i]] += 1.0;
            return;
        }
        for (NodeId w : g.neighbors(u)) {
            if (dist[s][w] == dist[s][u] + 1 && dist[w][t] != kInf &&
                dist[s][w] + dist[w][t] == dist[s][t]) {
                path.push_back(w);
                dfs(w);
                path.pop_back();
            }
        }
    };
    dfs(s);
}

} // namespace

std::vector<double> betweenness_path_enumeration(const Graph& g) {
    const NodeId n = g.node_count();
    const auto dist = all_pairs_relaxation(g);
    std::vector<double> score(n, 0.0);

    for (NodeId s = 0; s < n; ++s)
        for (NodeId t = s + 1; t < n; ++t) {
            if (dist[s][t] == kInf || dist[s][t] == 0) continue;
            std::vector<double> through(n, 0.0);
            double sigma = 0.0;
            count_paths(g, dist, s, t, through, sigma);
            for (NodeId w = 0; w < n; ++w)
                if (through[w] > 0.0) score[w] += through[w] / sigma;
        }
    return score;
}

std::vector<double> closeness_bfs_sum(const Graph& g) {
    const NodeId n = g.node_count();
    const auto dist = all_pairs_relaxation(g);
    std::vector<double> score(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        std::uint64_t sum = 0;
        for (NodeId u = 0; u < n; ++u)
            if (u != v && dist[v][u] != kInf) sum += dist[v][u];
        score[v] = sum > 0 ? 1.0 / static_cast<double>(sum) : 0.0;
    }
    return score;
}

std::vector<double> katz_series(const Graph& g, double alpha, double offset, int terms) {
    const NodeId n = g.node_count();
    std::vector<double> total(n, offset); // j = 0 term
    std::vector<double> walks(n, 1.0);    // (A^j 1)_v
    double alpha_pow = 1.0;
    for (int j = 1; j <= terms; ++j) {
        std::vector<double> next(n, 0.0);
        for (NodeId u = 0; u < n; ++u)
            for (NodeId w : g.neighbors(u)) next[u] += walks[w];
        walks = std::move(next);
        alpha_pow *= alpha;
        for (NodeId v = 0; v < n; ++v) total[v] += offset * alpha_pow * walks[v];
    }
    return total;
}

std::vector<double> pagerank_dense_solve(const Graph& g, double damping) {
    const int n = static_cast<int>(g.node_count());
    // M[i][j] = probability of stepping j -> i
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (int j = 0; j < n; ++j) {
        const auto nb = g.neighbors(static_cast<NodeId>(j));
        if (nb.empty()) {
            for (int i = 0; i < n; ++i) a[i][j] = -damping / n;
        } else {
            for (NodeId i : nb) a[i][j] = -damping / static_cast<double>(nb.size());
        }
    }
    for (int i = 0; i < n; ++i) {
        a[i][i] += 1.0;
        a[i][n] = (1.0 - damping) / n;
    }

    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0.0) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> x(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        x[i] = a[i][n] / a[i][i];
        total += x[i];
    }
    for (double& v : x) v /= total;
    return x;
}

EigenTop eigen_jacobi(const Graph& g) {
    const int n = static_cast<int>(g.node_count());
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId w : g.neighbors(u)) a[u][w] = 1.0;

    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-24) break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-18) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v[i][p], viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
    }

    int best = 0;
    for (int i = 1; i < n; ++i)
        if (a[i][i] > a[best][best]) best = i;
    double runner_up = -1e300;
    for (int i = 0; i < n; ++i)
        if (i != best) runner_up = std::max(runner_up, a[i][i]);

    std::vector<double> vec(n);
    double norm = 0.0, sum = 0.0;
    for (int i = 0; i < n; ++i) {
        vec[i] = v[i][best];
        norm += vec[i] * vec[i];
        sum += vec[i];
    }
    norm = std::sqrt(norm);
    const double sign = sum < 0 ? -1.0 : 1.0;
    for (double& e : vec) e = sign * e / norm;
    return {a[best][best], n > 1 ? runner_up : -1e300, vec};
}

double normal_sample(SplitMix64& rng) {
    // Box-Muller; the +0.5 offset keeps the log argument away from zero.
    const double u1 = (static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double gamma_sample(double shape, double scale, SplitMix64& rng) {
    if (shape < 1.0) {
        const double u = (static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53;
        return gamma_sample(shape + 1.0, scale, rng) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal_sample(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = (static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53;
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

Graph random_graph(NodeId n, double edge_prob, SplitMix64& rng) {
    Graph g(n);
    for (NodeId u = 0; u + 1 < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (rng.uniform01() < edge_prob) g.add_edge(u, v);
    return g;
}

} // namespace oracle
