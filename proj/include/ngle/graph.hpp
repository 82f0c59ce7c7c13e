#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ngle {

using NodeId = std::uint32_t;

// Undirected simple graph in CSR form. Immutable once built; adjacency rows
// are sorted. Construction validates simplicity and symmetry.
class Graph {
public:
    // adjacency[i] lists the neighbors of node i (both directions present).
    static Graph from_adjacency(std::vector<std::vector<NodeId>> adjacency);

    // edges as unordered pairs; duplicates and self-loops rejected.
    static Graph from_edges(NodeId n,
                            const std::vector<std::pair<NodeId, NodeId>>& edges);

    NodeId num_nodes() const { return n_; }
    std::uint64_t num_edges() const { return neighbors_.size() / 2; }

    std::uint32_t degree(NodeId v) const {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {neighbors_.data() + offsets_[v],
                neighbors_.data() + offsets_[v + 1]};
    }

    bool has_edge(NodeId u, NodeId v) const;

    // Sorted unique edge list with i < j.
    std::vector<std::pair<NodeId, NodeId>> edge_list() const;

private:
    NodeId n_ = 0;
    std::vector<std::uint64_t> offsets_;
    std::vector<NodeId> neighbors_;
};

// 2|E| / n.
double average_degree(const Graph& g);

// Mean shortest-path length over unordered node pairs, by BFS from every
// node. Throws std::runtime_error if the graph is disconnected.
double average_path_length(const Graph& g);

// Mean over nodes of (closed neighbor pairs / possible neighbor pairs);
// nodes of degree < 2 contribute 0.
double clustering_coefficient(const Graph& g);

// True iff a BFS from node 0 reaches all nodes. Empty graphs count as
// connected, single nodes too.
bool is_connected(const Graph& g);

// Edge-list text format: header "# n=<n>", then one "i j" pair per line,
// 0-based, i < j, sorted.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);
void save_edge_list(const Graph& g, const std::string& path);
Graph load_edge_list(const std::string& path);

} // namespace ngle
