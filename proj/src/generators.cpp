#include "ngle/generators.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ngle {

void NetworkSpec::validate() const {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ErdosRenyi>) {
                if (s.n < 2) throw std::invalid_argument("er: n must be >= 2");
                if (!(s.p > 0.0 && s.p <= 1.0))
                    throw std::invalid_argument("er: p must be in (0, 1]");
            } else if constexpr (std::is_same_v<T, WattsStrogatz>) {
                if (s.n < 2) throw std::invalid_argument("ws: n must be >= 2");
                if (s.k < 1) throw std::invalid_argument("ws: k must be >= 1");
                if (2ull * s.k >= s.n)
                    throw std::invalid_argument("ws: requires 2k < n");
                if (!(s.rp >= 0.0 && s.rp <= 1.0))
                    throw std::invalid_argument("ws: rp must be in [0, 1]");
            } else {
                if (s.m0 < 2) throw std::invalid_argument("ba: m0 must be >= 2");
                if (s.n < s.m0)
                    throw std::invalid_argument("ba: n must be >= m0");
                if (s.m < 1 || s.m > s.m0)
                    throw std::invalid_argument("ba: requires 1 <= m <= m0");
            }
        },
        variant);
}

NodeId NetworkSpec::num_nodes() const {
    return std::visit([](const auto& s) { return s.n; }, variant);
}

std::string NetworkSpec::label() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ErdosRenyi>)
                os << "RG/" << s.p;
            else if constexpr (std::is_same_v<T, WattsStrogatz>)
                os << "SW/" << s.k << "/" << s.rp;
            else
                os << "SF/" << s.m;
        },
        variant);
    return os.str();
}

namespace {

std::vector<std::vector<NodeId>> build_erdos_renyi(const ErdosRenyi& s,
                                                   RandomStream& rng) {
    std::vector<std::vector<NodeId>> adj(s.n);
    for (NodeId i = 0; i + 1 < s.n; ++i)
        for (NodeId j = i + 1; j < s.n; ++j)
            if (rng.bernoulli(s.p)) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    return adj;
}

bool contains(const std::vector<NodeId>& row, NodeId v) {
    return std::find(row.begin(), row.end(), v) != row.end();
}

void remove_one(std::vector<NodeId>& row, NodeId v) {
    auto it = std::find(row.begin(), row.end(), v);
    row.erase(it);
}

std::vector<std::vector<NodeId>> build_watts_strogatz(const WattsStrogatz& s,
                                                      RandomStream& rng) {
    std::vector<std::vector<NodeId>> adj(s.n);
    // Ring lattice: node u linked to its k nearest neighbors on each side.
    for (NodeId u = 0; u < s.n; ++u)
        for (std::uint32_t j = 1; j <= s.k; ++j) {
            const NodeId v = static_cast<NodeId>((u + j) % s.n);
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    // Rewire the far endpoint of each original lattice edge with
    // probability rp; skip targets that would create a self-loop or a
    // duplicate, leaving the edge in place if no valid target is found.
    for (NodeId u = 0; u < s.n; ++u)
        for (std::uint32_t j = 1; j <= s.k; ++j) {
            if (!rng.bernoulli(s.rp)) continue;
            const NodeId v = static_cast<NodeId>((u + j) % s.n);
            if (adj[u].size() >= s.n - 1) continue; // u already saturated
            NodeId w;
            do {
                w = static_cast<NodeId>(rng.uniform_index(s.n));
            } while (w == u || contains(adj[u], w));
            remove_one(adj[u], v);
            remove_one(adj[v], u);
            adj[u].push_back(w);
            adj[w].push_back(u);
        }
    return adj;
}

std::vector<std::vector<NodeId>> build_barabasi_albert(const BarabasiAlbert& s,
                                                       RandomStream& rng) {
    std::vector<std::vector<NodeId>> adj(s.n);
    // Degree-weighted urn: one entry per edge endpoint.
    std::vector<NodeId> urn;
    urn.reserve(2ull * (static_cast<std::uint64_t>(s.m0) * (s.m0 - 1) / 2 +
                        static_cast<std::uint64_t>(s.n - s.m0) * s.m));

    for (NodeId i = 0; i + 1 < s.m0; ++i)
        for (NodeId j = i + 1; j < s.m0; ++j) {
            adj[i].push_back(j);
            adj[j].push_back(i);
            urn.push_back(i);
            urn.push_back(j);
        }

    std::vector<NodeId> targets;
    for (NodeId v = s.m0; v < s.n; ++v) {
        // m distinct targets, degree-preferential over existing nodes.
        targets.clear();
        while (targets.size() < s.m) {
            const NodeId t = urn[rng.uniform_index(urn.size())];
            if (!contains(targets, t)) targets.push_back(t);
        }
        for (NodeId t : targets) {
            adj[v].push_back(t);
            adj[t].push_back(v);
            urn.push_back(v);
            urn.push_back(t);
        }
    }
    return adj;
}

} // namespace

Graph generate(const NetworkSpec& spec, RandomStream& rng, int max_attempts) {
    spec.validate();
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        auto adj = std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, ErdosRenyi>)
                    return build_erdos_renyi(s, rng);
                else if constexpr (std::is_same_v<T, WattsStrogatz>)
                    return build_watts_strogatz(s, rng);
                else
                    return build_barabasi_albert(s, rng);
            },
            spec.variant);
        Graph g = Graph::from_adjacency(std::move(adj));
        if (is_connected(g)) return g;
    }
    throw std::runtime_error("generate: unconnectable after " +
                             std::to_string(max_attempts) + " attempts (" +
                             spec.label() + ")");
}

} // namespace ngle
