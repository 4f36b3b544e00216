#pragma once

// Hegselmann-Krause bounded-confidence baseline with inertia f.

#include <vector>

#include "opnet/dynamics.hpp"
#include "opnet/model.hpp"

namespace opnet {

// Agents within eps of i (i excluded), on the ordered profile x. Distances
// within 1e-12 of eps count as inside.
PeerGraph hk_neighborhoods(double eps, const OpinionProfile& x);

// x_i = f * mean{x_j : |x_j - x_i| <= eps, i included} + (1-f) x_i.
OpinionProfile hk_step(double f, double eps, const OpinionProfile& x_prev);

struct HkTrajectory {
    double f = 0.5;
    double eps = 0.0;
    OpinionProfile initial;
    std::vector<OpinionProfile> profiles;  // profiles[t-1] is x_t
    std::vector<PeerGraph> graphs;         // graphs[t-1] was used to produce x_t
    Termination termination = Termination::horizon_reached;

    int steps() const { return static_cast<int>(profiles.size()); }
    const OpinionProfile& final_profile() const { return profiles.empty() ? initial : profiles.back(); }
};

// Iterates hk_step until the largest opinion change falls below 1e-9 or
// max_steps is reached.
HkTrajectory hk_run(double f, double eps, const OpinionProfile& initial, int max_steps);

}  // namespace opnet
