#pragma once

// One-shot two-stage game with fully rational agents: links first, then the
// opinion equilibrium of the formed network.

#include <optional>
#include <vector>

#include "opnet/model.hpp"

namespace opnet {

struct RationalInstance {
    std::vector<double> theta;  // ordered initial opinions
    std::vector<double> f_vec;  // per-agent flexibility in (0,1)
    double V = 0.0;

    static RationalInstance homogeneous(std::vector<double> theta, double f, double V);
    std::size_t size() const { return theta.size(); }
    void validate() const;
};

// Which alternatives an agent may deviate to.
enum class DeviationSet { windows, all_subsets };

// Unique x with x_i = f_i mu_i(x) + (1-f_i) theta_i; isolated agents keep theta_i.
// A plain vector because rational equilibria need not be ordered.
std::vector<double> solve_given_network(const RationalInstance& inst, const PeerGraph& graph);

// Sum over i's peers of V - f_i (x_i - x_j)^2 - (1-f_i)(x_i - theta_i)^2.
double rational_payoff(const RationalInstance& inst, const PeerGraph& graph, std::span<const double> x, int i);

struct NashCheck {
    bool is_nash = true;
    int agent = -1;           // first agent with a profitable deviation
    PeerSet deviation;        // her deviation
    double gain = 0.0;        // payoff improvement
};

// Exhaustive unilateral deviation check; a deviation counts when it improves
// the payoff by more than 1e-12. Throws SizeLimitExceeded for n > 10.
NashCheck is_nash(const RationalInstance& inst, const PeerGraph& graph,
                  DeviationSet set = DeviationSet::windows);

struct Equilibrium {
    PeerGraph graph;
    std::vector<double> opinions;
};

// Every pure-strategy profile (all windows per agent, or all subsets) that is
// a Nash equilibrium, ordered lexicographically by rows. n <= 5 for windows,
// n <= 4 for subsets; otherwise SizeLimitExceeded. jobs > 1 splits the
// profile range over threads without changing the result.
std::vector<Equilibrium> enumerate_equilibria(const RationalInstance& inst,
                                              DeviationSet set = DeviationSet::windows, int jobs = 1);

// Number of adjacent gaps wider than phi, plus one. Needs a common f.
int component_lower_bound(const RationalInstance& inst);

// Candidate peer sets for `owner` among n agents, lexicographically sorted.
std::vector<PeerSet> strategy_set(int n, int owner, DeviationSet set);

}  // namespace opnet
