#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace flatcurve {

using NodeId = std::uint32_t;

/// Undirected simple graph over dense node ids 0..n-1.
///
/// Adjacency lists are kept sorted so that iteration order, and therefore
/// every seeded run built on top of the graph, is deterministic. The graph
/// is immutable once edge insertion stops; all queries are const and safe
/// to call from multiple threads.
class Graph {
public:
    /// n >= 1 nodes, no edges.
    explicit Graph(NodeId n);

    /// Inserts the undirected edge {u, v}. Returns false (and leaves the
    /// graph unchanged) if the edge is already present. Self-loops and
    /// out-of-range ids are rejected with std::invalid_argument.
    bool add_edge(NodeId u, NodeId v);

    NodeId node_count() const { return static_cast<NodeId>(adj_.size()); }
    std::size_t edge_count() const { return edges_; }
    NodeId degree(NodeId v) const;
    bool has_edge(NodeId u, NodeId v) const;

    /// Neighbors of v in ascending id order.
    std::span<const NodeId> neighbors(NodeId v) const;

private:
    void check_node(NodeId v) const;

    std::vector<std::vector<NodeId>> adj_;
    std::size_t edges_ = 0;
};

/// Hop distances from a single source.
///
/// Unreachable nodes carry no numeric distance at all: distance() returns
/// nullopt for them, so infinite distances cannot leak into histograms or
/// averages as oversized finite values.
struct DistanceVector {
    NodeId source = 0;
    NodeId reachable_count = 0; ///< number of nodes with a finite distance (source included)

    bool reachable(NodeId v) const { return raw[v] != kUnreachable; }
    std::optional<std::uint32_t> distance(NodeId v) const {
        if (raw[v] == kUnreachable) return std::nullopt;
        return raw[v];
    }
    NodeId size() const { return static_cast<NodeId>(raw.size()); }

    static constexpr std::uint32_t kUnreachable = 0xFFFFFFFFu;
    std::vector<std::uint32_t> raw; ///< kUnreachable marks no path

};

/// Exact unweighted shortest-path distances from source (BFS).
DistanceVector bfs_distances(const Graph& g, NodeId source);

/// Partition of the node set into connected components. Isolated nodes
/// appear as singleton components. Components are ordered by their lowest
/// node id; nodes inside a component are ascending.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

/// Edge-list text format: one "u v" pair per line, 0-indexed. Lines starting
/// with '#' are comments; the writer emits "# nodes <n>" first so graphs with
/// trailing isolated nodes round-trip. The reader rejects self-loops and
/// re-declared edges.
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);

} // namespace flatcurve
