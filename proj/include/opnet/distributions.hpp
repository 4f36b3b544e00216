#pragma once

// Deterministic initial opinion profiles on [0,1].

#include "opnet/model.hpp"

namespace opnet {

// x_i = i/(n-1); mirrored pairs sum to exactly 1.
OpinionProfile uniform_grid(int n);

// Piecewise-uniform bell shape: the n-1 gaps are split into five symmetric
// blocks (tail, shoulder, centre, shoulder, tail) whose spacings grow
// geometrically towards the tails, s, s*r, s*r^2. The ratio r >= 1 is solved
// so the (n-1)-denominator variance equals target_variance.
struct PiecewiseNormalInfo {
    int tail_gaps = 0;
    int shoulder_gaps = 0;
    int centre_gaps = 0;
    double ratio = 1.0;
    double centre_spacing = 0.0;
    double variance = 0.0;
};
OpinionProfile piecewise_normal(int n, double target_variance, PiecewiseNormalInfo* info = nullptr);

// Smallest and largest variance the piecewise construction reaches for n.
std::pair<double, double> piecewise_normal_variance_range(int n);

// Two equispaced blocks of width mode_width centred at (1 -+ mode_gap)/2. For
// odd n the middle agent sits at 1/2. Throws BlockOverlap when the blocks
// intersect and std::invalid_argument when they leave [0,1].
OpinionProfile bimodal(int n, double mode_gap = 0.5, double mode_width = 0.3);

// (n-1)-denominator variance, the convention used for the reported targets.
double sample_variance(std::span<const double> x);

}  // namespace opnet
