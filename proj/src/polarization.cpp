#include "opnet/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace opnet {

void PolarizationParams::validate() const {
    if (!(K > 0.0)) throw std::invalid_argument("K must be positive");
    if (!(alpha > 0.0 && alpha <= 1.6)) throw std::invalid_argument("alpha must lie in (0, 1.6], got " + std::to_string(alpha));
    if (s < 2) throw std::invalid_argument("segment count must be at least 2");
}

double esteban_ray(std::span<const double> x, const PolarizationParams& p) {
    p.validate();
    if (x.empty()) return 0.0;
    std::vector<double> count(static_cast<std::size_t>(p.s), 0.0);
    std::vector<double> sum(static_cast<std::size_t>(p.s), 0.0);
    for (double v : x) {
        if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) throw std::invalid_argument("opinion outside [0,1]");
        const double c = std::clamp(v, 0.0, 1.0);
        const int k = std::min(p.s - 1, static_cast<int>(std::floor(c * p.s)));
        count[static_cast<std::size_t>(k)] += 1.0;
        sum[static_cast<std::size_t>(k)] += c;
    }
    const double total = static_cast<double>(x.size());
    double out = 0.0;
    for (std::size_t a = 0; a < count.size(); ++a) {
        if (count[a] == 0.0) continue;
        const double ra = count[a] / total;
        const double ma = sum[a] / count[a];
        const double wa = std::pow(ra, 1.0 + p.alpha);
        for (std::size_t b = 0; b < count.size(); ++b) {
            if (b == a || count[b] == 0.0) continue;
            out += wa * (count[b] / total) * std::abs(ma - sum[b] / count[b]);
        }
    }
    return p.K * out;
}

}  // namespace opnet
