#include "opnet/distributions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "opnet/errors.hpp"

namespace opnet {

namespace {

// Writes the upper half from `value(i)` and mirrors it, so that
// x_i + x_{n-1-i} == 1 holds exactly (1 - b is exact for b in [1/2, 1]).
template <class F>
std::vector<double> mirrored(int n, F value) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int j = n - 1 - i;
        if (i > j) continue;
        if (i == j) {
            x[static_cast<std::size_t>(i)] = 0.5;
            continue;
        }
        const double upper = value(j);
        x[static_cast<std::size_t>(j)] = upper;
        x[static_cast<std::size_t>(i)] = 1.0 - upper;
    }
    return x;
}

struct Blocks {
    int tail = 0;
    int shoulder = 0;
    int centre = 0;
};

Blocks split_gaps(int n) {
    const int m = n - 1;
    Blocks b;
    b.tail = m / 5;
    b.shoulder = m / 5;
    b.centre = m - 2 * b.tail - 2 * b.shoulder;
    return b;
}

// Gap sizes left to right for spacing ratio r; they sum to 1.
std::vector<double> gaps_for(const Blocks& b, double r) {
    const double s = 1.0 / (b.centre + 2.0 * b.shoulder * r + 2.0 * b.tail * r * r);
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(b.centre + 2 * (b.shoulder + b.tail)));
    for (int k = 0; k < b.tail; ++k) g.push_back(s * r * r);
    for (int k = 0; k < b.shoulder; ++k) g.push_back(s * r);
    for (int k = 0; k < b.centre; ++k) g.push_back(s);
    for (int k = 0; k < b.shoulder; ++k) g.push_back(s * r);
    for (int k = 0; k < b.tail; ++k) g.push_back(s * r * r);
    return g;
}

std::vector<double> piecewise_profile(int n, const Blocks& b, double r) {
    const auto g = gaps_for(b, r);
    std::vector<double> cum(static_cast<std::size_t>(n), 0.0);
    for (int i = 1; i < n; ++i) cum[static_cast<std::size_t>(i)] = cum[static_cast<std::size_t>(i - 1)] + g[static_cast<std::size_t>(i - 1)];
    // upper half measured from the right end keeps the top value exactly 1
    return mirrored(n, [&](int j) {
        double from_right = 0.0;
        for (int k = j; k < n - 1; ++k) from_right += g[static_cast<std::size_t>(k)];
        return 1.0 - from_right;
    });
}

constexpr double kMaxRatio = 1e6;

}  // namespace

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(x.size() - 1);
}

OpinionProfile uniform_grid(int n) {
    if (n < 2) throw std::invalid_argument("uniform grid needs n >= 2");
    const double denom = static_cast<double>(n - 1);
    return OpinionProfile(mirrored(n, [&](int j) { return static_cast<double>(j) / denom; }));
}

std::pair<double, double> piecewise_normal_variance_range(int n) {
    if (n < 2) throw std::invalid_argument("piecewise normal needs n >= 2");
    const Blocks b = split_gaps(n);
    const double hi = sample_variance(piecewise_profile(n, b, 1.0));
    const double lo = sample_variance(piecewise_profile(n, b, kMaxRatio));
    return {std::min(lo, hi), hi};
}

OpinionProfile piecewise_normal(int n, double target_variance, PiecewiseNormalInfo* info) {
    if (n < 2) throw std::invalid_argument("piecewise normal needs n >= 2");
    if (!(target_variance > 0.0 && target_variance <= 1.0 / 12.0)) {
        throw UnattainableVariance("target variance must lie in (0, 1/12], got " + std::to_string(target_variance));
    }
    const Blocks b = split_gaps(n);
    auto var_at = [&](double r) { return sample_variance(piecewise_profile(n, b, r)); };
    const auto [lo_var, hi_var] = piecewise_normal_variance_range(n);
    if (target_variance < lo_var || target_variance > hi_var) {
        throw UnattainableVariance("variance " + std::to_string(target_variance) + " is outside [" +
                                   std::to_string(lo_var) + ", " + std::to_string(hi_var) + "] for n = " +
                                   std::to_string(n));
    }
    // variance falls as the tails spread, bisect on log r
    double a = 0.0;
    double z = std::log(kMaxRatio);
    for (int it = 0; it < 200 && z - a > 1e-15; ++it) {
        const double mid = 0.5 * (a + z);
        if (var_at(std::exp(mid)) > target_variance) a = mid;
        else z = mid;
    }
    const double r = std::exp(0.5 * (a + z));
    auto x = piecewise_profile(n, b, r);
    if (info) {
        info->tail_gaps = b.tail;
        info->shoulder_gaps = b.shoulder;
        info->centre_gaps = b.centre;
        info->ratio = r;
        info->centre_spacing = 1.0 / (b.centre + 2.0 * b.shoulder * r + 2.0 * b.tail * r * r);
        info->variance = sample_variance(x);
    }
    return OpinionProfile(std::move(x));
}

OpinionProfile bimodal(int n, double mode_gap, double mode_width) {
    if (n < 2) throw std::invalid_argument("bimodal needs n >= 2");
    if (mode_gap < 0.0 || mode_width < 0.0) throw std::invalid_argument("mode gap and width must be nonnegative");
    if (mode_width > mode_gap) throw BlockOverlap("blocks of width " + std::to_string(mode_width) +
                                                  " overlap at centre distance " + std::to_string(mode_gap));
    if (mode_gap + mode_width > 1.0) throw std::invalid_argument("blocks do not fit in [0,1]");
    const int per_block = n / 2;
    const double centre = 0.5 * (1.0 + mode_gap);
    const double left = centre - 0.5 * mode_width;
    // j indexes the upper half; the upper block holds indices n - per_block .. n-1
    return OpinionProfile(mirrored(n, [&](int j) {
        const int k = j - (n - per_block);
        if (per_block == 1) return centre;
        return left + mode_width * static_cast<double>(k) / static_cast<double>(per_block - 1);
    }));
}

}  // namespace opnet
