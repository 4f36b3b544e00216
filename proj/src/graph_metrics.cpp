#include "opnet/graph_metrics.hpp"

#include <algorithm>
#include <numeric>

namespace opnet {

std::optional<int> directed_diameter(const PeerGraph& graph) {
    const std::size_t n = graph.size();
    int diameter = 0;
    std::vector<int> dist(n);
    std::vector<int> queue(n);
    for (std::size_t src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[src] = 0;
        std::size_t head = 0;
        std::size_t tail = 0;
        queue[tail++] = static_cast<int>(src);
        while (head < tail) {
            const int u = queue[head++];
            for (int v : graph.row(static_cast<std::size_t>(u))) {
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    queue[tail++] = v;
                }
            }
        }
        if (tail != n) return std::nullopt;
        diameter = std::max(diameter, *std::max_element(dist.begin(), dist.end()));
    }
    return diameter;
}

namespace {

int find_root(std::vector<int>& parent, int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
        parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        v = parent[static_cast<std::size_t>(v)];
    }
    return v;
}

}  // namespace

std::vector<std::vector<int>> weak_components(const PeerGraph& graph) {
    const int n = static_cast<int>(graph.size());
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    for (int u = 0; u < n; ++u) {
        for (int v : graph.row(static_cast<std::size_t>(u))) {
            const int a = find_root(parent, u);
            const int b = find_root(parent, v);
            // smaller index becomes the root, which fixes the output order
            if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
    }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        const int r = find_root(parent, v);
        if (slot[static_cast<std::size_t>(r)] < 0) {
            slot[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(v);
    }
    return out;
}

bool induces_complete(const PeerGraph& graph, const std::vector<int>& component) {
    for (int u : component) {
        for (int v : component) {
            if (u != v && !graph.has_edge(u, v)) return false;
        }
    }
    return true;
}

int count_clusters(std::span<const double> sorted_values, double gap) {
    if (sorted_values.empty()) return 0;
    int clusters = 1;
    for (std::size_t i = 1; i < sorted_values.size(); ++i) {
        if (sorted_values[i] - sorted_values[i - 1] > gap) ++clusters;
    }
    return clusters;
}

}  // namespace opnet
