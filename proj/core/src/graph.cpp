#include "flatcurve/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace flatcurve {

Graph::Graph(NodeId n) {
    if (n == 0) throw std::invalid_argument("Graph: node count must be >= 1");
    adj_.resize(n);
}

void Graph::check_node(NodeId v) const {
    if (v >= adj_.size())
        throw std::invalid_argument("Graph: node id " + std::to_string(v) +
                                    " out of range [0, " + std::to_string(adj_.size()) + ")");
}

bool Graph::add_edge(NodeId u, NodeId v) {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("Graph: self-loop on node " + std::to_string(u));

    auto& au = adj_[u];
    auto pos = std::lower_bound(au.begin(), au.end(), v);
    if (pos != au.end() && *pos == v) return false;
    au.insert(pos, v);

    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edges_;
    return true;
}

NodeId Graph::degree(NodeId v) const {
    check_node(v);
    return static_cast<NodeId>(adj_[v].size());
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    const auto& au = adj_[u];
    return std::binary_search(au.begin(), au.end(), v);
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
    check_node(v);
    return {adj_[v].data(), adj_[v].size()};
}

DistanceVector bfs_distances(const Graph& g, NodeId source) {
    if (source >= g.node_count())
        throw std::invalid_argument("bfs_distances: source out of range");

    DistanceVector d;
    d.source = source;
    d.raw.assign(g.node_count(), DistanceVector::kUnreachable);
    d.raw[source] = 0;
    d.reachable_count = 1;

    std::deque<NodeId> frontier{source};
    while (!frontier.empty()) {
        const NodeId u = frontier.front();
        frontier.pop_front();
        const std::uint32_t du = d.raw[u];
        for (NodeId w : g.neighbors(u)) {
            if (d.raw[w] == DistanceVector::kUnreachable) {
                d.raw[w] = du + 1;
                ++d.reachable_count;
                frontier.push_back(w);
            }
        }
    }
    return d;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
    const NodeId n = g.node_count();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<NodeId>> components;

    for (NodeId s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<NodeId> comp;
        std::deque<NodeId> frontier{s};
        seen[s] = true;
        while (!frontier.empty()) {
            const NodeId u = frontier.front();
            frontier.pop_front();
            comp.push_back(u);
            for (NodeId w : g.neighbors(u)) {
                if (!seen[w]) {
                    seen[w] = true;
                    frontier.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

Graph read_edge_list(std::istream& in) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::uint64_t declared_nodes = 0;
    std::uint64_t max_id = 0;
    bool any = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hdr(line.substr(1));
            std::string word;
            if (hdr >> word && word == "nodes") hdr >> declared_nodes;
            continue;
        }
        std::istringstream ls(line);
        std::uint64_t u, v;
        if (!(ls >> u >> v))
            throw std::invalid_argument("read_edge_list: malformed line " + std::to_string(lineno));
        if (u == v)
            throw std::invalid_argument("read_edge_list: self-loop at line " + std::to_string(lineno));
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        max_id = std::max({max_id, u, v});
        any = true;
    }

    const std::uint64_t n = std::max(declared_nodes, any ? max_id + 1 : std::uint64_t{1});
    Graph g(static_cast<NodeId>(n));
    for (auto [u, v] : edges) {
        if (!g.add_edge(u, v))
            throw std::invalid_argument("read_edge_list: edge " + std::to_string(u) + " " +
                                        std::to_string(v) + " declared twice");
    }
    return g;
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << "# nodes " << g.node_count() << "\n";
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.neighbors(u))
            if (u < v) out << u << " " << v << "\n";
}

} // namespace flatcurve
