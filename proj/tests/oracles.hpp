#pragma once

// Independent reference implementations used only by the tests.

#include <cmath>
#include <vector>

#include "hilbert/geometry.hpp"

namespace oracle {

// Direct |x - x_i|^-p / sum, no log-space tricks. Only valid for moderate distances.
inline std::vector<double> naive_weights(const hilbert::Point& x, const hilbert::Dataset& data, double p) {
    std::vector<double> w(data.size());
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < data.dim(); ++k) {
            const double d = x[k] - data.point(i)[k];
            s += d * d;
        }
        w[i] = std::pow(std::sqrt(s), -p);
        total += w[i];
    }
    for (auto& v : w) v /= total;
    return w;
}

// W_n^-1 values, computed to 30 digits with an independent multiprecision solver.
struct WnRow {
    unsigned long long n;
    double inverse_exact;
    double n_log_n;
};
inline constexpr WnRow kWnTable[] = {
    {400, 3232.3909498074153, 2396.5858188431928},
    {1000, 9118.0064704027401, 6907.7552789821371},
    {10000, 116671.14532566354, 92103.403719761827},
    {65536, 898391.13430936040, 726817.49800282521},
    {100000, 1416360.0815810183, 1151292.5464970228},
};

// kappa(x) for sin(2 pi y) on U[0, 1].
inline constexpr double kKappaSine03 = -2.90410320342149318687593181038;
inline constexpr double kKappaSine01 = -0.809425212565496;
inline constexpr double kKappaSine025 = -2.882615938302875;

// kappa_{1/2}(1/2) for rho(y) = 2y: integral of 2y |y - 1/2|^-1/2 over [0, 1].
inline constexpr double kKappaHalfTriangular = 2.8284271247461903;

// 2 - 1/ln 2 and the exterior limit at x = 100 for f(y) = y on U[0, 1].
inline constexpr double kExtrapolationAt2 = 0.557304959111036592;
inline constexpr double kExtrapolationAt100 = 0.500837526577827;

}  // namespace oracle
