#pragma once

// Parameters, state types, payoffs and the within-period opinion solve.

#include <cstddef>
#include <span>
#include <vector>

namespace opnet {

// How the step's opinions follow from the step's graph.
//   simultaneous: x_t solves x = f mu(x) + (1-f) x_{t-1} (peers' current opinions)
//   hearing:      x_t = W_t x_{t-1} with W_t = (1-f) I + f D_t (peers' last opinions)
enum class UpdateRule { simultaneous, hearing };

struct ModelParams {
    double V = 0.0;       // benefit per out-link
    double f = 0.5;       // flexibility, weight on the social term
    int n = 2;            // agent count
    int max_steps = 500;  // run horizon
    UpdateRule rule = UpdateRule::hearing;

    // Throws std::invalid_argument unless 0 < f < 1, V >= 0, n >= 2, max_steps >= 1.
    void validate() const;
};

// Opinions indexed by agent. Initial profiles are nondecreasing in the index;
// the dynamics can break that order for large f, so it is checked, not enforced.
class OpinionProfile {
public:
    // Inversions up to this size count as ties (solver round-off).
    static constexpr double kOrderSlack = 1e-12;

    OpinionProfile() = default;
    explicit OpinionProfile(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }
    const std::vector<double>& vector() const { return values_; }
    double min() const;
    double max() const;
    // Nondecreasing in the index up to kOrderSlack.
    bool ordered() const;

    friend bool operator==(const OpinionProfile&, const OpinionProfile&) = default;

private:
    std::vector<double> values_;
};

using PeerSet = std::vector<int>;

// Directed peer choices for one step. Row i lists i's out-neighbours in
// increasing index order; self-loops are rejected.
class PeerGraph {
public:
    PeerGraph() = default;
    explicit PeerGraph(std::size_t n) : rows_(n) {}
    explicit PeerGraph(std::vector<PeerSet> rows);

    static PeerGraph empty(std::size_t n) { return PeerGraph(n); }
    static PeerGraph complete(std::size_t n);

    std::size_t size() const { return rows_.size(); }
    const PeerSet& row(std::size_t i) const { return rows_[i]; }
    const std::vector<PeerSet>& rows() const { return rows_; }
    int degree(std::size_t i) const { return static_cast<int>(rows_[i].size()); }
    std::size_t edge_count() const;
    bool has_edge(int src, int dst) const;

    // Replaces row i; sorts and validates.
    void set_row(std::size_t i, PeerSet peers);

    // True when every row is a contiguous index interval over the agents other
    // than its owner.
    bool is_windowed() const;

    friend bool operator==(const PeerGraph&, const PeerGraph&) = default;

private:
    std::vector<PeerSet> rows_;
};

// True when `peers` (sorted) is a hole-free interval over the agents != owner.
bool is_window(std::span<const int> peers, int owner);

// Agents by opinion: the identity when x is ordered, otherwise a stable sort
// by value (equal opinions keep index order).
std::vector<int> opinion_order(const OpinionProfile& x);

// True when `peers` is a hole-free run of the agents != owner in `order`.
bool is_opinion_window(std::span<const int> order, std::span<const int> peers, int owner);

struct NeighborStats {
    double mu = 0.0;
    double sigma2 = 0.0;
    int d = 0;
};

// Mean and population variance of the peers' values. An agent without peers
// gets her own value as mean and zero variance.
NeighborStats neighbor_stats(std::span<const double> x, std::span<const int> peers, int owner);

// Payoff at the opinion equilibrium:
// d * (V - f(1-f)(mu - x_prev)^2 - f sigma2), zero for d = 0.
double realized_payoff(const ModelParams& params, int d, double mu, double sigma2, double x_prev);

// Payoff of agent i for linking to `window`, evaluated on last period's
// opinions. Throws InvalidWindow if the window is unsorted, contains i, or
// leaves a hole in opinion order.
double anticipated_payoff(const ModelParams& params, std::span<const int> window,
                          const OpinionProfile& x_prev, int i);

// Raw per-link payoff sum_j (V - f(x_i - x_j)^2 - (1-f)(x_i - x_prev_i)^2).
double direct_payoff(double V, double f, std::span<const double> x, std::span<const int> peers,
                     int i, double x_prev_i);

struct SolveReport {
    std::vector<double> x;
    double residual = 0.0;
    int iterations = 0;
};

// Solves x_i = f_i mu_i(x) + (1 - f_i) theta_i for agents with peers and
// x_i = theta_i for isolated agents, by fixed-point iteration (contraction
// rate max f_i). Throws NonConvergence if the residual stays above 1e-10.
SolveReport solve_best_responses(const PeerGraph& graph, std::span<const double> theta,
                                 std::span<const double> flex);

// Homogeneous-f solve.
OpinionProfile solve_within_period(const ModelParams& params, const PeerGraph& graph,
                                   const OpinionProfile& x_prev);

// One multiplication by the hearing matrix: x_i = f mu_i(x_prev) + (1-f) x_prev_i,
// isolated agents keep their opinion.
OpinionProfile hearing_update(const ModelParams& params, const PeerGraph& graph,
                              const OpinionProfile& x_prev);

// Dispatches on params.rule.
OpinionProfile update_opinions(const ModelParams& params, const PeerGraph& graph,
                               const OpinionProfile& x_prev);

// Max over agents of |x_i - f mu_i(x) - (1-f) theta_i| (isolated: |x_i - theta_i|).
double best_response_residual(const PeerGraph& graph, std::span<const double> x,
                              std::span<const double> theta, double f);

}  // namespace opnet
