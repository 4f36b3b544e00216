#pragma once

#include <span>

namespace opnet {

struct PolarizationParams {
    double K = 1.0;
    double alpha = 1.0;  // in (0, 1.6]
    int s = 10;          // equal-width segments of [0,1]

    // Throws std::invalid_argument on K <= 0, alpha outside (0, 1.6] or s < 2.
    void validate() const;
};

// Esteban-Ray index K * sum_k sum_l rho_k^(1+alpha) rho_l |m_k - m_l| over
// opinion segments; rho is the population share and m the mean opinion of a
// segment. Segments are [k/s, (k+1)/s) with the last one closed. Values must
// lie in [0,1] (1e-12 slack).
double esteban_ray(std::span<const double> x, const PolarizationParams& p);

}  // namespace opnet
