#include "ngle/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ngle {

Graph Graph::from_adjacency(std::vector<std::vector<NodeId>> adjacency) {
    Graph g;
    g.n_ = static_cast<NodeId>(adjacency.size());
    g.offsets_.assign(g.n_ + 1, 0);

    std::uint64_t total = 0;
    for (NodeId v = 0; v < g.n_; ++v) {
        auto& row = adjacency[v];
        std::sort(row.begin(), row.end());
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] >= g.n_)
                throw std::invalid_argument("neighbor index out of range");
            if (row[i] == v)
                throw std::invalid_argument("self-loop in adjacency");
            if (i > 0 && row[i] == row[i - 1])
                throw std::invalid_argument("duplicate edge in adjacency");
        }
        total += row.size();
        g.offsets_[v + 1] = total;
    }

    g.neighbors_.reserve(total);
    for (const auto& row : adjacency)
        g.neighbors_.insert(g.neighbors_.end(), row.begin(), row.end());

    // Symmetry check: every directed arc needs its reverse.
    for (NodeId v = 0; v < g.n_; ++v)
        for (NodeId w : g.neighbors(v))
            if (!g.has_edge(w, v))
                throw std::invalid_argument("adjacency is not symmetric");
    return g;
}

Graph Graph::from_edges(NodeId n,
                        const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::vector<std::vector<NodeId>> adj(n);
    for (auto [a, b] : edges) {
        if (a >= n || b >= n)
            throw std::invalid_argument("edge endpoint out of range");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return from_adjacency(std::move(adj));
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edge_list() const {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(num_edges());
    for (NodeId v = 0; v < n_; ++v)
        for (NodeId w : neighbors(v))
            if (v < w) edges.emplace_back(v, w);
    return edges;
}

double average_degree(const Graph& g) {
    if (g.num_nodes() == 0) return 0.0;
    return 2.0 * static_cast<double>(g.num_edges()) / g.num_nodes();
}

namespace {

// BFS from src; returns number of reached nodes, accumulates distances.
std::uint32_t bfs(const Graph& g, NodeId src, std::vector<std::uint32_t>& dist,
                  std::vector<NodeId>& queue, std::uint64_t* dist_sum) {
    dist.assign(g.num_nodes(), UINT32_MAX);
    queue.clear();
    dist[src] = 0;
    queue.push_back(src);
    std::size_t head = 0;
    std::uint64_t sum = 0;
    while (head < queue.size()) {
        const NodeId v = queue[head++];
        const std::uint32_t d = dist[v] + 1;
        for (NodeId w : g.neighbors(v)) {
            if (dist[w] == UINT32_MAX) {
                dist[w] = d;
                sum += d;
                queue.push_back(w);
            }
        }
    }
    if (dist_sum) *dist_sum = sum;
    return static_cast<std::uint32_t>(queue.size());
}

} // namespace

double average_path_length(const Graph& g) {
    const NodeId n = g.num_nodes();
    if (n < 2) return 0.0;
    std::vector<std::uint32_t> dist;
    std::vector<NodeId> queue;
    std::uint64_t total = 0;
    for (NodeId v = 0; v < n; ++v) {
        std::uint64_t sum = 0;
        if (bfs(g, v, dist, queue, &sum) != n)
            throw std::runtime_error("average_path_length: graph disconnected");
        total += sum;
    }
    // total counts each unordered pair twice.
    return static_cast<double>(total) /
           (static_cast<double>(n) * (n - 1));
}

double clustering_coefficient(const Graph& g) {
    const NodeId n = g.num_nodes();
    if (n == 0) return 0.0;
    std::vector<char> mark(n, 0);
    double acc = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        const auto nv = g.neighbors(v);
        const std::size_t d = nv.size();
        if (d < 2) continue;
        for (NodeId w : nv) mark[w] = 1;
        std::uint64_t closed = 0;
        for (NodeId w : nv)
            for (NodeId u : g.neighbors(w))
                if (u > w && mark[u]) ++closed;
        for (NodeId w : nv) mark[w] = 0;
        acc += 2.0 * static_cast<double>(closed) /
               (static_cast<double>(d) * (d - 1));
    }
    return acc / n;
}

bool is_connected(const Graph& g) {
    if (g.num_nodes() == 0) return true;
    std::vector<std::uint32_t> dist;
    std::vector<NodeId> queue;
    return bfs(g, 0, dist, queue, nullptr) == g.num_nodes();
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << "# n=" << g.num_nodes() << "\n";
    for (auto [a, b] : g.edge_list()) out << a << " " << b << "\n";
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("edge list: empty input");
    NodeId n = 0;
    if (std::sscanf(line.c_str(), "# n=%u", &n) != 1)
        throw std::runtime_error("edge list: missing '# n=<n>' header");
    std::vector<std::pair<NodeId, NodeId>> edges;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        NodeId a, b;
        if (!(ls >> a >> b))
            throw std::runtime_error("edge list: malformed line: " + line);
        edges.emplace_back(a, b);
    }
    return Graph::from_edges(n, edges);
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_edge_list(g, out);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return read_edge_list(in);
}

} // namespace ngle
