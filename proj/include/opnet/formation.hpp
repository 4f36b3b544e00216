#pragma once

// Myopic peer selection at the start of a step.
//
// Each agent scores every contiguous window over the other agents, taken in
// opinion order (index order whenever last period's profile is ordered), with
// the anticipated payoff on last period's opinions and keeps the best one.
// Ties are broken by
//   1. linking over staying isolated when the best window scores exactly 0,
//   2. the lexicographically smallest sorted index sequence (a proper prefix
//      sorts first, so {1,2} < {1,2,3} < {1,3}).
// Payoffs within kTieTolerance of each other count as tied.

#include "opnet/model.hpp"

namespace opnet {

inline constexpr double kTieTolerance = 1e-12;

// Contiguous window [lo, hi] over the index line with the owner skipped.
struct Window {
    int lo = 0;
    int hi = -1;

    bool empty() const { return hi < lo; }
    PeerSet members(int owner) const;
    friend bool operator==(const Window&, const Window&) = default;
};

// Every index window available to `owner` among n agents, empty window
// first, the rest in lexicographic order of their member sequences.
std::vector<Window> candidate_windows(int n, int owner);

PeerSet best_window(const ModelParams& params, const OpinionProfile& x_prev, int i);

// Rows computed independently from the same snapshot. jobs > 1 splits the
// agents over worker threads; the result does not depend on jobs.
PeerGraph form_network(const ModelParams& params, const OpinionProfile& x_prev, int jobs = 1);

}  // namespace opnet
