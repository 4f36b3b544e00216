#include "opnet/thresholds.hpp"

#include <cmath>
#include <stdexcept>

namespace opnet {

namespace {
void check(double V, double f) {
    if (!(V >= 0.0)) throw std::invalid_argument("V must be nonnegative");
    if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("f must lie in (0,1)");
}
}  // namespace

double threshold_xi(double V, double f) {
    check(V, f);
    return std::sqrt(V / (f * (1.0 - f)));
}

double threshold_phi(double V, double f) { return (1.0 + f) * threshold_xi(V, f); }

UniformRadii uniform_radii(double V, double f, int n) {
    check(V, f);
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    const double nn = static_cast<double>(n);
    UniformRadii r;
    r.delta = (-f + std::sqrt(f * (f + 9.0 * nn * nn * V))) / (3.0 * f * nn);
    const double root = std::sqrt(3.0 * f * (4.0 + 3.0 * (-2.0 + f) * f) + 36.0 * (4.0 - 3.0 * f) * nn * nn * V);
    r.vartheta = (6.0 - 6.0 * f + root / std::sqrt(f)) / ((12.0 - 9.0 * f) * nn);
    r.delta_limit = std::sqrt(V / f);
    r.vartheta_limit = 2.0 / std::sqrt(4.0 - 3.0 * f) * std::sqrt(V / f);
    return r;
}

bool diameter_condition(double V, double f, int z) {
    check(V, f);
    if (z < 0) throw std::invalid_argument("z must be nonnegative");
    return std::sqrt(V / f) * (z + 2.0 / std::sqrt(4.0 - 3.0 * f)) <= 1.0;
}

double diameter_boundary(double f, int z) {
    check(0.0, f);
    const double c = z + 2.0 / std::sqrt(4.0 - 3.0 * f);
    return f / (c * c);
}

RegionFlags region_predicates(double V, double f) {
    check(V, f);
    return {V > consensus_boundary(f), V < divergence_boundary(f)};
}

double consensus_boundary(double f) { return f * (4.0 - 3.0 * f) / 16.0; }
double divergence_boundary(double f) { return f / 16.0; }

double extreme_agent_payoff(double V, double f, int k, int n) {
    const double q = static_cast<double>(k - 1) / n;
    return k * (V - 0.25 * (1.0 - f) * f * q * q - f * q * q / 12.0);
}

double central_agent_payoff(double V, double f, int k, int n) {
    const double a = 2.0 * k + 1.0;
    return k * (V - f * (a * a - 1.0) / (12.0 * static_cast<double>(n) * n));
}

}  // namespace opnet
