#include "opnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "opnet/errors.hpp"

namespace opnet {

namespace {

constexpr double kFailTolerance = 1e-10;
// Iterate past the failure tolerance while it is cheap to do so.
constexpr double kTargetTolerance = 1e-13;

int iteration_cap(double max_f) {
    if (max_f <= 0.0) return 10;
    const double per = std::ceil(std::log(kFailTolerance) / std::log(max_f));
    return std::max(10, 10 * static_cast<int>(per));
}

struct RowSpan {
    int lo = 0;
    int hi = -1;
    bool skips_owner = false;
};

}  // namespace

void ModelParams::validate() const {
    if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("f must lie in (0,1), got " + std::to_string(f));
    if (!(V >= 0.0)) throw std::invalid_argument("V must be nonnegative, got " + std::to_string(V));
    if (n < 2) throw std::invalid_argument("n must be at least 2, got " + std::to_string(n));
    if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
}

OpinionProfile::OpinionProfile(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("opinion profile is empty");
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("opinion profile has a non-finite value");
    }
}

double OpinionProfile::min() const { return *std::min_element(values_.begin(), values_.end()); }
double OpinionProfile::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool OpinionProfile::ordered() const {
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] < values_[i - 1] - kOrderSlack) return false;
    }
    return true;
}

PeerGraph::PeerGraph(std::vector<PeerSet> rows) : rows_(rows.size()) {
    for (std::size_t i = 0; i < rows.size(); ++i) set_row(i, std::move(rows[i]));
}

PeerGraph PeerGraph::complete(std::size_t n) {
    PeerGraph g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.rows_[i].reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) g.rows_[i].push_back(static_cast<int>(j));
        }
    }
    return g;
}

void PeerGraph::set_row(std::size_t i, PeerSet peers) {
    std::sort(peers.begin(), peers.end());
    if (std::adjacent_find(peers.begin(), peers.end()) != peers.end()) {
        throw std::invalid_argument("duplicate peer in row " + std::to_string(i));
    }
    const int n = static_cast<int>(rows_.size());
    for (int j : peers) {
        if (j < 0 || j >= n) throw std::out_of_range("peer index out of range in row " + std::to_string(i));
        if (j == static_cast<int>(i)) throw std::invalid_argument("self-loop in row " + std::to_string(i));
    }
    rows_.at(i) = std::move(peers);
}

std::size_t PeerGraph::edge_count() const {
    std::size_t m = 0;
    for (const auto& r : rows_) m += r.size();
    return m;
}

bool PeerGraph::has_edge(int src, int dst) const {
    const auto& r = rows_.at(static_cast<std::size_t>(src));
    return std::binary_search(r.begin(), r.end(), dst);
}

bool is_window(std::span<const int> peers, int owner) {
    if (peers.empty()) return true;
    const int lo = peers.front();
    const int hi = peers.back();
    if (lo == owner || hi == owner) return false;
    const int covered = hi - lo + 1 - ((lo < owner && owner < hi) ? 1 : 0);
    if (covered != static_cast<int>(peers.size())) return false;
    return !std::binary_search(peers.begin(), peers.end(), owner);
}

bool PeerGraph::is_windowed() const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!is_window(rows_[i], static_cast<int>(i))) return false;
    }
    return true;
}

std::vector<int> opinion_order(const OpinionProfile& x) {
    std::vector<int> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    if (x.ordered()) return order;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)];
    });
    return order;
}

bool is_opinion_window(std::span<const int> order, std::span<const int> peers, int owner) {
    if (peers.empty()) return true;
    std::vector<int> pos(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) pos[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
    std::vector<int> ranks;
    ranks.reserve(peers.size());
    for (int j : peers) ranks.push_back(pos[static_cast<std::size_t>(j)]);
    std::sort(ranks.begin(), ranks.end());
    return is_window(ranks, pos[static_cast<std::size_t>(owner)]);
}

NeighborStats neighbor_stats(std::span<const double> x, std::span<const int> peers, int owner) {
    NeighborStats s;
    s.d = static_cast<int>(peers.size());
    if (s.d == 0) {
        s.mu = x[static_cast<std::size_t>(owner)];
        return s;
    }
    double sum = 0.0;
    for (int j : peers) sum += x[static_cast<std::size_t>(j)];
    s.mu = sum / s.d;
    double ss = 0.0;
    for (int j : peers) {
        const double dev = x[static_cast<std::size_t>(j)] - s.mu;
        ss += dev * dev;
    }
    s.sigma2 = ss / s.d;
    return s;
}

double realized_payoff(const ModelParams& params, int d, double mu, double sigma2, double x_prev) {
    if (d == 0) return 0.0;
    const double f = params.f;
    const double gap = mu - x_prev;
    return d * (params.V - f * (1.0 - f) * gap * gap - f * sigma2);
}

double anticipated_payoff(const ModelParams& params, std::span<const int> window,
                          const OpinionProfile& x_prev, int i) {
    const int n = static_cast<int>(x_prev.size());
    if (i < 0 || i >= n) throw std::out_of_range("agent index out of range");
    if (!std::is_sorted(window.begin(), window.end())) throw InvalidWindow("window is not sorted");
    for (int j : window) {
        if (j < 0 || j >= n) throw InvalidWindow("window member out of range");
    }
    if (std::adjacent_find(window.begin(), window.end()) != window.end()) throw InvalidWindow("window repeats a member");
    if (!is_opinion_window(opinion_order(x_prev), window, i)) {
        throw InvalidWindow("window contains the owner or has holes");
    }
    if (window.empty()) return 0.0;
    const auto s = neighbor_stats(x_prev.values(), window, i);
    return realized_payoff(params, s.d, s.mu, s.sigma2, x_prev[static_cast<std::size_t>(i)]);
}

double direct_payoff(double V, double f, std::span<const double> x, std::span<const int> peers,
                     int i, double x_prev_i) {
    const double xi = x[static_cast<std::size_t>(i)];
    const double own = (xi - x_prev_i) * (xi - x_prev_i);
    double total = 0.0;
    for (int j : peers) {
        const double gap = xi - x[static_cast<std::size_t>(j)];
        total += V - f * gap * gap - (1.0 - f) * own;
    }
    return total;
}

double best_response_residual(const PeerGraph& graph, std::span<const double> x,
                              std::span<const double> theta, double f) {
    double res = 0.0;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        const auto& row = graph.row(i);
        double target = theta[i];
        if (!row.empty()) {
            double sum = 0.0;
            for (int j : row) sum += x[static_cast<std::size_t>(j)];
            target = f * (sum / static_cast<double>(row.size())) + (1.0 - f) * theta[i];
        }
        res = std::max(res, std::abs(x[i] - target));
    }
    return res;
}

SolveReport solve_best_responses(const PeerGraph& graph, std::span<const double> theta,
                                 std::span<const double> flex) {
    const std::size_t n = graph.size();
    if (theta.size() != n || flex.size() != n) {
        throw std::invalid_argument("graph, opinions and flexibilities disagree in size");
    }
    double max_f = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(flex[i] >= 0.0 && flex[i] < 1.0)) throw std::invalid_argument("flexibility must lie in [0,1)");
        max_f = std::max(max_f, flex[i]);
        scale = std::max(scale, std::abs(theta[i]));
    }

    // Window rows are summed from prefix sums in O(1); other rows directly.
    const bool windowed = graph.is_windowed();
    std::vector<RowSpan> spans(windowed ? n : 0);
    if (windowed) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = graph.row(i);
            if (row.empty()) continue;
            const int owner = static_cast<int>(i);
            spans[i] = {row.front(), row.back(), row.front() < owner && owner < row.back()};
        }
    }

    SolveReport report;
    report.x.assign(theta.begin(), theta.end());
    std::vector<double> next(n);
    std::vector<double> prefix(n + 1, 0.0);
    const int cap = iteration_cap(max_f);
    double step = 0.0;
    for (int it = 0; it < cap; ++it) {
        if (windowed) {
            for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + report.x[k];
        }
        step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = graph.row(i);
            if (row.empty()) {
                next[i] = theta[i];
                continue;
            }
            double sum = 0.0;
            if (windowed) {
                const auto& s = spans[i];
                sum = prefix[static_cast<std::size_t>(s.hi) + 1] - prefix[static_cast<std::size_t>(s.lo)];
                if (s.skips_owner) sum -= report.x[i];
            } else {
                for (int j : row) sum += report.x[static_cast<std::size_t>(j)];
            }
            next[i] = flex[i] * (sum / static_cast<double>(row.size())) + (1.0 - flex[i]) * theta[i];
            step = std::max(step, std::abs(next[i] - report.x[i]));
        }
        report.x.swap(next);
        report.iterations = it + 1;
        if (step <= kTargetTolerance * scale) break;
    }

    // Exact residual of the returned point, computed without prefix sums.
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = graph.row(i);
        double target = theta[i];
        if (!row.empty()) {
            double sum = 0.0;
            for (int j : row) sum += report.x[static_cast<std::size_t>(j)];
            target = flex[i] * (sum / static_cast<double>(row.size())) + (1.0 - flex[i]) * theta[i];
        }
        res = std::max(res, std::abs(report.x[i] - target));
    }
    report.residual = res;
    if (res >= kFailTolerance * scale) {
        throw NonConvergence("best-response iteration stalled at residual " + std::to_string(res) +
                             " after " + std::to_string(report.iterations) + " iterations");
    }
    return report;
}

OpinionProfile solve_within_period(const ModelParams& params, const PeerGraph& graph,
                                   const OpinionProfile& x_prev) {
    if (graph.size() != x_prev.size()) throw std::invalid_argument("graph and profile disagree in size");
    const std::vector<double> flex(x_prev.size(), params.f);
    auto report = solve_best_responses(graph, x_prev.values(), flex);
    return OpinionProfile(std::move(report.x));
}

OpinionProfile hearing_update(const ModelParams& params, const PeerGraph& graph,
                              const OpinionProfile& x_prev) {
    if (graph.size() != x_prev.size()) throw std::invalid_argument("graph and profile disagree in size");
    const double f = params.f;
    std::vector<double> x(x_prev.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& row = graph.row(i);
        if (row.empty()) {
            x[i] = x_prev[i];
            continue;
        }
        double sum = 0.0;
        for (int j : row) sum += x_prev[static_cast<std::size_t>(j)];
        x[i] = f * (sum / static_cast<double>(row.size())) + (1.0 - f) * x_prev[i];
    }
    return OpinionProfile(std::move(x));
}

OpinionProfile update_opinions(const ModelParams& params, const PeerGraph& graph,
                               const OpinionProfile& x_prev) {
    return params.rule == UpdateRule::hearing ? hearing_update(params, graph, x_prev)
                                              : solve_within_period(params, graph, x_prev);
}

}  // namespace opnet
