#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ngle/generators.hpp"
#include "ngle/graph.hpp"

using namespace ngle;

namespace {

Graph triangle() { return Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}); }
Graph path3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }
Graph star4() { return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}); }

NetworkSpec er(NodeId n, double p) {
    NetworkSpec s;
    s.variant = ErdosRenyi{n, p};
    return s;
}
NetworkSpec ws(NodeId n, std::uint32_t k, double rp) {
    NetworkSpec s;
    s.variant = WattsStrogatz{n, k, rp};
    return s;
}
NetworkSpec ba(NodeId n, std::uint32_t m0, std::uint32_t m) {
    NetworkSpec s;
    s.variant = BarabasiAlbert{n, m0, m};
    return s;
}

// Independent oracle for path lengths: Floyd-Warshall.
double apl_floyd_warshall(const Graph& g) {
    const int n = static_cast<int>(g.num_nodes());
    constexpr double inf = 1e18;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        for (NodeId w : g.neighbors(v)) d[v][w] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    double sum = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sum += d[i][j];
    return sum / (static_cast<double>(n) * (n - 1));
}

} // namespace

TEST_CASE("hand-counted statistics on tiny graphs") {
    CHECK(average_degree(triangle()) == doctest::Approx(2.0));
    CHECK(average_path_length(triangle()) == doctest::Approx(1.0));
    CHECK(clustering_coefficient(triangle()) == doctest::Approx(1.0));

    CHECK(average_degree(path3()) == doctest::Approx(4.0 / 3.0));
    CHECK(average_path_length(path3()) == doctest::Approx(4.0 / 3.0));

    CHECK(clustering_coefficient(star4()) == doctest::Approx(0.0));
    CHECK(is_connected(triangle()));
}

TEST_CASE("disconnected graphs are detected and rejected by path length") {
    const Graph two_edges = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK_FALSE(is_connected(two_edges));
    CHECK_THROWS_AS(average_path_length(two_edges), std::runtime_error);
}

TEST_CASE("construction validates simplicity") {
    CHECK_THROWS(Graph::from_edges(3, {{0, 0}}));            // self loop
    CHECK_THROWS(Graph::from_edges(3, {{0, 1}, {1, 0}}));    // duplicate
    CHECK_THROWS(Graph::from_edges(2, {{0, 5}}));            // out of range
    CHECK_THROWS(Graph::from_adjacency({{1}, {}}));          // asymmetric
}

TEST_CASE("average path length agrees with Floyd-Warshall on random graphs") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        RandomStream rng(derive_seed(77, seed));
        const Graph g = generate(er(24, 0.2), rng);
        CHECK(average_path_length(g) ==
              doctest::Approx(apl_floyd_warshall(g)).epsilon(1e-12));
    }
}

TEST_CASE("edge-list round trip and exact text format") {
    const Graph g = triangle();
    std::ostringstream os;
    write_edge_list(g, os);
    CHECK(os.str() == "# n=3\n0 1\n0 2\n1 2\n");

    std::istringstream is(os.str());
    const Graph back = read_edge_list(is);
    CHECK(back.num_nodes() == 3);
    CHECK(back.edge_list() == g.edge_list());

    std::istringstream bad("0 1\n");
    CHECK_THROWS(read_edge_list(bad));
}

TEST_CASE("watts-strogatz keeps the lattice edge count at any rewiring") {
    for (double rp : {0.0, 0.1, 0.5, 1.0}) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            RandomStream rng(derive_seed(3, seed));
            const Graph g = generate(ws(60, 4, rp), rng);
            CHECK(g.num_edges() == 60ull * 4);
        }
    }
    RandomStream rng(5);
    CHECK(average_degree(generate(ws(200, 10, 0.2), rng)) ==
          doctest::Approx(20.0));
}

TEST_CASE("barabasi-albert edge count matches the attachment formula") {
    const std::vector<std::tuple<NodeId, std::uint32_t, std::uint32_t>> cases =
        {{100, 5, 3}, {200, 26, 25}, {50, 6, 6}};
    for (auto [n, m0, m] : cases) {
        RandomStream rng(derive_seed(9, n, m0, m));
        const Graph g = generate(ba(n, m0, m), rng);
        const std::uint64_t expected =
            static_cast<std::uint64_t>(m0) * (m0 - 1) / 2 +
            static_cast<std::uint64_t>(n - m0) * m;
        CHECK(g.num_edges() == expected);
    }
}

TEST_CASE("erdos-renyi edge count follows the binomial mean") {
    const NodeId n = 200;
    const double p = 0.1;
    const int instances = 30;
    double total = 0;
    for (int i = 0; i < instances; ++i) {
        RandomStream rng(derive_seed(11, i));
        total += static_cast<double>(generate(er(n, p), rng).num_edges());
    }
    const double pairs = n * (n - 1) / 2.0;
    const double mean_edges = total / instances;
    const double sigma = std::sqrt(pairs * p * (1 - p) / instances);
    CHECK(std::abs(mean_edges - pairs * p) < 3 * sigma);
}

TEST_CASE("generated graphs are connected, simple and undirected") {
    const NetworkSpec specs[] = {er(40, 0.15), ws(40, 3, 0.3), ba(40, 4, 3)};
    for (const auto& spec : specs) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            RandomStream rng(derive_seed(21, seed));
            const Graph g = generate(spec, rng);
            CHECK(is_connected(g));
            for (NodeId v = 0; v < g.num_nodes(); ++v) {
                const auto nb = g.neighbors(v);
                for (std::size_t i = 0; i < nb.size(); ++i) {
                    CHECK(nb[i] != v);
                    if (i > 0) CHECK(nb[i] > nb[i - 1]); // sorted, no dups
                    CHECK(g.has_edge(nb[i], v));
                }
            }
        }
    }
}

TEST_CASE("scale-free instances have heavy-tailed degrees") {
    // n=2000, m=25: the largest hub should clear 4x the average degree.
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        RandomStream rng(derive_seed(33, seed));
        const Graph g = generate(ba(2000, 26, 25), rng);
        std::uint32_t max_degree = 0;
        for (NodeId v = 0; v < g.num_nodes(); ++v)
            max_degree = std::max(max_degree, g.degree(v));
        CHECK(max_degree >= 4.0 * average_degree(g));
    }
}

TEST_CASE("erdos-renyi clustering approximates p") {
    RandomStream rng(55);
    const Graph g = generate(er(300, 0.15), rng);
    CHECK(clustering_coefficient(g) == doctest::Approx(0.15).epsilon(0.1));
}

TEST_CASE("spec validation rejects out-of-range parameters") {
    CHECK_THROWS(er(1, 0.5).validate());
    CHECK_THROWS(er(10, 0.0).validate());
    CHECK_THROWS(er(10, 1.5).validate());
    CHECK_THROWS(ws(10, 5, 0.1).validate()); // 2k >= n
    CHECK_THROWS(ws(10, 0, 0.1).validate());
    CHECK_THROWS(ws(10, 2, -0.1).validate());
    CHECK_THROWS(ba(10, 1, 1).validate());
    CHECK_THROWS(ba(10, 4, 5).validate()); // m > m0
    CHECK_THROWS(ba(3, 4, 2).validate());  // n < m0
    CHECK_NOTHROW(er(2000, 0.05).validate());
}

TEST_CASE("unconnectable regimes raise after bounded retries") {
    RandomStream rng(1);
    // p so small the graph is essentially never connected
    CHECK_THROWS_AS(generate(er(200, 0.001), rng, 5), std::runtime_error);
}

TEST_CASE("generation replays bit-exactly from the same seed") {
    for (const auto& spec : {er(80, 0.1), ws(80, 4, 0.2), ba(80, 6, 4)}) {
        RandomStream a(4242), b(4242);
        CHECK(generate(spec, a).edge_list() == generate(spec, b).edge_list());
    }
}
