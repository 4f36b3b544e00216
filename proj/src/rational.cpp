#include "opnet/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "opnet/errors.hpp"
#include "opnet/formation.hpp"
#include "opnet/thresholds.hpp"

namespace opnet {

namespace {
constexpr double kGainTolerance = 1e-12;
constexpr std::size_t kNashLimit = 10;
}  // namespace

RationalInstance RationalInstance::homogeneous(std::vector<double> theta, double f, double V) {
    RationalInstance r;
    r.f_vec.assign(theta.size(), f);
    r.theta = std::move(theta);
    r.V = V;
    return r;
}

void RationalInstance::validate() const {
    if (theta.empty()) throw std::invalid_argument("instance has no agents");
    if (f_vec.size() != theta.size()) throw std::invalid_argument("theta and f_vec differ in length");
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (!std::isfinite(theta[i])) throw std::invalid_argument("non-finite theta");
        if (i > 0 && theta[i] < theta[i - 1]) throw std::invalid_argument("theta must be ordered");
        if (!(f_vec[i] > 0.0 && f_vec[i] < 1.0)) throw std::invalid_argument("every f_i must lie in (0,1)");
    }
    if (!(V >= 0.0)) throw std::invalid_argument("V must be nonnegative");
}

std::vector<double> solve_given_network(const RationalInstance& inst, const PeerGraph& graph) {
    if (graph.size() != inst.size()) throw std::invalid_argument("graph and instance differ in size");
    return solve_best_responses(graph, inst.theta, inst.f_vec).x;
}

double rational_payoff(const RationalInstance& inst, const PeerGraph& graph, std::span<const double> x, int i) {
    const auto k = static_cast<std::size_t>(i);
    return direct_payoff(inst.V, inst.f_vec[k], x, graph.row(k), i, inst.theta[k]);
}

std::vector<PeerSet> strategy_set(int n, int owner, DeviationSet set) {
    std::vector<PeerSet> out;
    if (set == DeviationSet::windows) {
        for (const auto& w : candidate_windows(n, owner)) out.push_back(w.members(owner));
    } else {
        std::vector<int> others;
        for (int j = 0; j < n; ++j) {
            if (j != owner) others.push_back(j);
        }
        const std::size_t m = others.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            PeerSet s;
            for (std::size_t b = 0; b < m; ++b) {
                if (mask & (std::size_t{1} << b)) s.push_back(others[b]);
            }
            out.push_back(std::move(s));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

NashCheck check_with(const RationalInstance& inst, const PeerGraph& graph,
                     const std::vector<std::vector<PeerSet>>& strategies) {
    const auto x = solve_given_network(inst, graph);
    NashCheck res;
    PeerGraph trial = graph;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const int agent = static_cast<int>(i);
        const double current = rational_payoff(inst, graph, x, agent);
        for (const auto& alt : strategies[i]) {
            if (alt == graph.row(i)) continue;
            trial.set_row(i, alt);
            const auto y = solve_given_network(inst, trial);
            const double gain = rational_payoff(inst, trial, y, agent) - current;
            if (gain > kGainTolerance) {
                res.is_nash = false;
                res.agent = agent;
                res.deviation = alt;
                res.gain = gain;
                return res;
            }
        }
        trial.set_row(i, graph.row(i));
    }
    return res;
}

std::vector<std::vector<PeerSet>> all_strategies(std::size_t n, DeviationSet set) {
    std::vector<std::vector<PeerSet>> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = strategy_set(static_cast<int>(n), static_cast<int>(i), set);
    return s;
}

}  // namespace

NashCheck is_nash(const RationalInstance& inst, const PeerGraph& graph, DeviationSet set) {
    inst.validate();
    if (inst.size() > kNashLimit) {
        throw SizeLimitExceeded("is_nash supports n <= 10, got " + std::to_string(inst.size()));
    }
    return check_with(inst, graph, all_strategies(inst.size(), set));
}

std::vector<Equilibrium> enumerate_equilibria(const RationalInstance& inst, DeviationSet set, int jobs) {
    inst.validate();
    const std::size_t n = inst.size();
    const std::size_t limit = set == DeviationSet::windows ? 5 : 4;
    if (n > limit) {
        throw SizeLimitExceeded("enumeration supports n <= " + std::to_string(limit) + ", got " + std::to_string(n));
    }
    const auto strategies = all_strategies(n, set);
    std::size_t total = 1;
    for (const auto& s : strategies) total *= s.size();

    // profile index -> graph, agent 0 most significant, so index order is row order
    auto decode = [&](std::size_t idx) {
        std::vector<PeerSet> rows(n);
        for (std::size_t k = n; k-- > 0;) {
            const std::size_t m = strategies[k].size();
            rows[k] = strategies[k][idx % m];
            idx /= m;
        }
        return PeerGraph(std::move(rows));
    };

    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, total);
    std::vector<std::vector<Equilibrium>> found(workers);
    auto work = [&](std::size_t w) {
        const std::size_t lo = total * w / workers;
        const std::size_t hi = total * (w + 1) / workers;
        for (std::size_t idx = lo; idx < hi; ++idx) {
            PeerGraph g = decode(idx);
            if (check_with(inst, g, strategies).is_nash) {
                auto x = solve_given_network(inst, g);
                found[w].push_back({std::move(g), std::move(x)});
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    std::vector<Equilibrium> out;
    for (auto& part : found) {
        for (auto& e : part) out.push_back(std::move(e));
    }
    return out;
}

int component_lower_bound(const RationalInstance& inst) {
    inst.validate();
    const double f = inst.f_vec.front();
    for (double fi : inst.f_vec) {
        if (fi != f) throw std::invalid_argument("component bound needs a common f");
    }
    const double phi = threshold_phi(inst.V, f);
    int gaps = 0;
    for (std::size_t i = 1; i < inst.size(); ++i) {
        if (inst.theta[i] - inst.theta[i - 1] > phi) ++gaps;
    }
    return gaps + 1;
}

}  // namespace opnet
