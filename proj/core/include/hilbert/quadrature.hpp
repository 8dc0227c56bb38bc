#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "hilbert/densities.hpp"

namespace hilbert {

struct QuadratureResult {
    double value;
    /// Absolute error estimate (deterministic rules) or standard error (Monte Carlo).
    double error;
    bool monte_carlo = false;
};

struct QuadratureOptions {
    /// Relative tolerance requested from each adaptive Gauss-Kronrod call.
    /// Integrals that cancel to nearly zero stop instead at a roundoff floor
    /// proportional to the integral of |integrand|.
    double relative_tolerance = 1e-12;
    /// Panel budget of one adaptive call.
    unsigned max_panels = 2000;
    /// Raise ConvergenceError when the error estimate exceeds
    /// failure_threshold * max(1, |value|).
    double failure_threshold = 1e-6;
    /// Direction samples for d >= 3.
    std::size_t mc_directions = 4096;
    std::uint64_t mc_seed = 0x5eed5eedULL;
};

/// Integrand evaluated at absolute points z = x + y. It must already include
/// the density factor rho(z) (so it vanishes off the support).
using PointIntegrand = std::function<double(std::span<const double>)>;

/// I = integral over R^d of g(x + y) |y|^-power dy.
///
/// Polar coordinates around x, directions paired with their antipodes so odd
/// parts cancel before integration. Each radial ray is split at the support
/// edges; the piece touching r = 0 is mapped by r = b e^-t, which turns an
/// integrable r^(d-1-power) singularity into an exponentially decaying
/// integrand. d = 1, 2 use nested adaptive Gauss-Kronrod; d >= 3 averages the
/// radial integral over random directions and reports a standard error.
QuadratureResult singular_integral(const DensityModel& density, std::span<const double> x, double power,
                                   const PointIntegrand& g, const QuadratureOptions& options = {});

}  // namespace hilbert
