#include "opnet/formation.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace opnet {

PeerSet Window::members(int owner) const {
    PeerSet out;
    for (int j = lo; j <= hi; ++j) {
        if (j != owner) out.push_back(j);
    }
    return out;
}

std::vector<Window> candidate_windows(int n, int owner) {
    std::vector<Window> out;
    out.push_back(Window{});
    for (int lo = 0; lo < n; ++lo) {
        if (lo == owner) continue;
        for (int hi = lo; hi < n; ++hi) {
            if (hi == owner) continue;
            out.push_back(Window{lo, hi});
        }
    }
    return out;
}

namespace {

PeerSet sorted_members(const std::vector<int>& others, int a, int b) {
    PeerSet out(others.begin() + a, others.begin() + b + 1);
    std::sort(out.begin(), out.end());
    return out;
}

PeerSet best_window_in(const ModelParams& params, const OpinionProfile& x_prev, int i,
                       const std::vector<int>& order, bool index_order) {
    const int n = static_cast<int>(x_prev.size());
    const double xi = x_prev[static_cast<std::size_t>(i)];
    const double V = params.V;
    const double f = params.f;

    // Positions in `others` list the agents != i by opinion. Sums are centred
    // on the owner's opinion so that for a window with d members,
    //   payoff = d V - f S2 + f^2 S1^2 / d,
    // S1 = sum (x_j - x_i), S2 = sum (x_j - x_i)^2.
    std::vector<int> others;
    others.reserve(static_cast<std::size_t>(n - 1));
    std::vector<double> s1(static_cast<std::size_t>(n), 0.0);
    std::vector<double> s2(static_cast<std::size_t>(n), 0.0);
    for (int j : order) {
        if (j == i) continue;
        const double dev = x_prev[static_cast<std::size_t>(j)] - xi;
        const std::size_t k = others.size();
        s1[k + 1] = s1[k] + dev;
        s2[k + 1] = s2[k] + dev * dev;
        others.push_back(j);
    }

    const int m = n - 1;
    int best_a = 0;
    int best_b = -1;
    double best = 0.0;
    bool linked = false;
    // In index order the windows come in lexicographic order, so only a strict
    // improvement replaces the incumbent; otherwise ties compare members.
    for (int a = 0; a < m; ++a) {
        for (int b = a; b < m; ++b) {
            const double d = static_cast<double>(b - a + 1);
            const double S1 = s1[static_cast<std::size_t>(b) + 1] - s1[static_cast<std::size_t>(a)];
            const double S2 = s2[static_cast<std::size_t>(b) + 1] - s2[static_cast<std::size_t>(a)];
            const double payoff = d * V - f * S2 + f * f * S1 * S1 / d;
            bool take = false;
            if (!linked) {
                take = payoff >= -kTieTolerance;
            } else if (payoff > best + kTieTolerance) {
                take = true;
            } else if (!index_order && payoff >= best - kTieTolerance) {
                take = sorted_members(others, a, b) < sorted_members(others, best_a, best_b);
            }
            if (take) {
                best = payoff;
                best_a = a;
                best_b = b;
                linked = true;
            }
        }
    }
    if (!linked) return {};
    return sorted_members(others, best_a, best_b);
}

}  // namespace

PeerSet best_window(const ModelParams& params, const OpinionProfile& x_prev, int i) {
    const int n = static_cast<int>(x_prev.size());
    if (i < 0 || i >= n) throw std::out_of_range("agent index out of range");
    const bool index_order = x_prev.ordered();
    return best_window_in(params, x_prev, i, opinion_order(x_prev), index_order);
}

PeerGraph form_network(const ModelParams& params, const OpinionProfile& x_prev, int jobs) {
    const int n = static_cast<int>(x_prev.size());
    std::vector<PeerSet> rows(static_cast<std::size_t>(n));
    const bool index_order = x_prev.ordered();
    const auto order = opinion_order(x_prev);
    auto fill = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            rows[static_cast<std::size_t>(i)] = best_window_in(params, x_prev, i, order, index_order);
        }
    };
    jobs = std::clamp(jobs, 1, n);
    if (jobs == 1) {
        fill(0, n);
    } else {
        std::vector<std::jthread> workers;
        const int chunk = (n + jobs - 1) / jobs;
        for (int w = 0; w < jobs; ++w) {
            const int begin = w * chunk;
            const int end = std::min(n, begin + chunk);
            if (begin < end) workers.emplace_back(fill, begin, end);
        }
    }
    return PeerGraph(std::move(rows));
}

}  // namespace opnet
