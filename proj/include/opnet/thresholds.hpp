#pragma once

// Closed-form thresholds for link formation and the uniform-profile regimes.

#include "opnet/model.hpp"

namespace opnet {

// Largest opinion gap a myopic pair still bridges: sqrt(V / (f(1-f))).
double threshold_xi(double V, double f);
// Same for fully rational agents: (1+f) * xi.
double threshold_phi(double V, double f);

struct UniformRadii {
    double delta = 0.0;           // central agent's farthest link
    double vartheta = 0.0;        // extreme agent's farthest link
    double delta_limit = 0.0;     // n -> infinity
    double vartheta_limit = 0.0;
};
UniformRadii uniform_radii(double V, double f, int n);

// sqrt(V/f) * (z + 2/sqrt(4-3f)) <= 1: period-1 diameter at least z+1 for large n.
bool diameter_condition(double V, double f, int z);

// Largest V with diameter_condition(V, f, z) true.
double diameter_boundary(double f, int z);

struct RegionFlags {
    bool consensus = false;   // V > f(4-3f)/16
    bool divergence = false;  // V < f/16
};
RegionFlags region_predicates(double V, double f);

double consensus_boundary(double f);   // f(4-3f)/16
double divergence_boundary(double f);  // f/16

// Continuous-uniform payoffs of linking to k agents, for an extreme agent and
// for a central agent with k links on each side.
double extreme_agent_payoff(double V, double f, int k, int n);
double central_agent_payoff(double V, double f, int k, int n);

}  // namespace opnet
