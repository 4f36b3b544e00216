#include <doctest.h>

#include <stdexcept>

#include <functional>
#include <random>

#include "opnet/graph_metrics.hpp"
#include "oracles.hpp"

using namespace opnet;

TEST_CASE("diameter examples") {
    CHECK(directed_diameter(PeerGraph::complete(5)) == 1);
    PeerGraph path(std::vector<PeerSet>{{1}, {2}, {}});
    CHECK_FALSE(directed_diameter(path).has_value());
    PeerGraph two(std::vector<PeerSet>{{1}, {0}, {3}, {2}});
    CHECK_FALSE(directed_diameter(two).has_value());
    PeerGraph cycle(std::vector<PeerSet>{{1}, {2}, {3}, {0}});
    CHECK(directed_diameter(cycle) == 3);
    CHECK(directed_diameter(PeerGraph(1)) == 0);
}

TEST_CASE("diameter agrees with Floyd-Warshall") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const int n = 1 + static_cast<int>(u(rng) * 12);
        const auto g = oracle::random_graph(rng, n, u(rng));
        const auto d = directed_diameter(g);
        CHECK((d ? *d : -1) == oracle::diameter_fw(g));
    }
}

TEST_CASE("weak components") {
    CHECK(weak_components(PeerGraph(5)).size() == 5);
    CHECK(weak_components(PeerGraph::complete(5)).size() == 1);
    PeerGraph g(std::vector<PeerSet>{{}, {0}, {}, {4}, {}});
    const auto c = weak_components(g);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == std::vector<int>{0, 1});
    CHECK(c[1] == std::vector<int>{2});
    CHECK(c[2] == std::vector<int>{3, 4});
}

TEST_CASE("weak components agree with a DFS over the symmetrised graph") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const int n = 1 + static_cast<int>(u(rng) * 15);
        const auto g = oracle::random_graph(rng, n, 0.3 * u(rng));
        std::vector<std::vector<int>> adj(n);
        for (int i = 0; i < n; ++i)
            for (int j : g.row(i)) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        std::vector<int> label(n, -1);
        int count = 0;
        std::function<void(int)> dfs = [&](int v) {
            for (int w : adj[v])
                if (label[w] < 0) {
                    label[w] = label[v];
                    dfs(w);
                }
        };
        for (int v = 0; v < n; ++v)
            if (label[v] < 0) {
                label[v] = count++;
                dfs(v);
            }
        const auto comps = weak_components(g);
        CHECK(static_cast<int>(comps.size()) == count);
        for (const auto& c : comps)
            for (int v : c) CHECK(label[v] == label[c.front()]);
    }
}

TEST_CASE("complete components and clusters") {
    PeerGraph g(std::vector<PeerSet>{{1}, {0}, {3}, {}});
    CHECK(induces_complete(g, {0, 1}));
    CHECK_FALSE(induces_complete(g, {2, 3}));
    const std::vector<double> v{0.0, 0.0, 0.5, 0.5000001, 1.0};
    CHECK(count_clusters(v, 1e-6) == 3);
    CHECK(count_clusters(std::vector<double>{}, 1e-6) == 0);
}
