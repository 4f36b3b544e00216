#include "opnet/hk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opnet {

namespace {
constexpr double kEpsSlack = 1e-12;
constexpr double kSteadyChange = 1e-9;

void check(double f, double eps) {
    if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("f must lie in (0,1)");
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be nonnegative");
}

// [lo, hi] index span of agents within eps of each agent, self included
std::vector<std::pair<int, int>> spans(double eps, std::span<const double> x) {
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (x[i] < x[i - 1] - OpinionProfile::kOrderSlack) throw std::invalid_argument("HK needs an ordered profile");
    }
    const int n = static_cast<int>(x.size());
    std::vector<std::pair<int, int>> out(static_cast<std::size_t>(n));
    int lo = 0;
    int hi = 0;
    for (int i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        while (xi - x[static_cast<std::size_t>(lo)] > eps + kEpsSlack) ++lo;
        hi = std::max(hi, i);
        while (hi + 1 < n && x[static_cast<std::size_t>(hi + 1)] - xi <= eps + kEpsSlack) ++hi;
        out[static_cast<std::size_t>(i)] = {lo, hi};
    }
    return out;
}
}  // namespace

PeerGraph hk_neighborhoods(double eps, const OpinionProfile& x) {
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be nonnegative");
    const auto sp = spans(eps, x.values());
    PeerGraph g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        PeerSet row;
        for (int j = sp[i].first; j <= sp[i].second; ++j) {
            if (j != static_cast<int>(i)) row.push_back(j);
        }
        g.set_row(i, std::move(row));
    }
    return g;
}

OpinionProfile hk_step(double f, double eps, const OpinionProfile& x_prev) {
    check(f, eps);
    const auto x = x_prev.values();
    const auto sp = spans(eps, x);
    std::vector<double> prefix(x.size() + 1, 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) prefix[k + 1] = prefix[k] + x[k];
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto [lo, hi] = sp[i];
        const double mean = (prefix[static_cast<std::size_t>(hi) + 1] - prefix[static_cast<std::size_t>(lo)]) /
                            static_cast<double>(hi - lo + 1);
        out[i] = f * mean + (1.0 - f) * x[i];
    }
    return OpinionProfile(std::move(out));
}

HkTrajectory hk_run(double f, double eps, const OpinionProfile& initial, int max_steps) {
    check(f, eps);
    if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
    HkTrajectory tr;
    tr.f = f;
    tr.eps = eps;
    tr.initial = initial;
    const OpinionProfile* prev = &tr.initial;
    for (int t = 1; t <= max_steps; ++t) {
        tr.graphs.push_back(hk_neighborhoods(eps, *prev));
        OpinionProfile next = hk_step(f, eps, *prev);
        double change = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) change = std::max(change, std::abs(next[i] - (*prev)[i]));
        tr.profiles.push_back(std::move(next));
        prev = &tr.profiles.back();
        if (change < kSteadyChange) {
            tr.termination = Termination::steady_state;
            break;
        }
    }
    return tr;
}

}  // namespace opnet
