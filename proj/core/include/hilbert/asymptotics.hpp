#pragma once

#include <cstdint>
#include <string>

#include "hilbert/constants.hpp"
#include "hilbert/densities.hpp"
#include "hilbert/geometry.hpp"
#include "hilbert/quadrature.hpp"

namespace hilbert {

/// Scale of the weight distribution: root of W ln(1/W) = 1/n on (0, 1/e).
struct ScaleWn {
    std::uint64_t n;
    double exact;
    double first_order;   ///< 1 / (n ln n)
    double second_order;  ///< 1 / (n ln(n ln n))
};

/// Newton iteration on W ln(1/W) - 1/n from the second-order guess. n >= 3.
ScaleWn solve_wn(std::uint64_t n);

enum class Quantity {
    moment_beta,
    variance,
    bias,
    squared_bias,
    risk,
    classification_bound,
    lagrange,
    extrapolation_limit,
    rho_zero_limit,
    exceedance,
};

std::string to_string(Quantity q);

struct AsymptoticPrediction {
    Quantity quantity;
    double value;
    std::string validity_note;
    /// Moment does not exist (beta <= -1); value is +infinity.
    bool divergent = false;
    /// The equivalent is conjectured rather than proven (-1 < beta < 0).
    bool conjecture = false;
};

/// omega_x * V_d * rho(x): the local mass scale. Throws DomainError when rho(x) = 0.
double local_mass_scale(const Point& x, const DensityModel& density);

/// Large-n equivalent of E[w_0(x)^beta].
///   beta > 1      : 1 / ((beta - 1) n ln n)
///   0 < beta < 1  : kappa_beta(x) / (V_d rho(x) n ln n)^beta
///   -1 < beta < 0 : same formula, flagged as a conjecture
///   beta <= -1    : divergent
/// beta = 1 returns the exact 1/(n+1), beta = 0 returns 1.
AsymptoticPrediction predict_moment(double beta, std::uint64_t n, const Point& x, const DensityModel& density);

/// kappa_beta(x) = int rho(x+y) |y|^(-beta d) dy for 0 < beta < 1.
double kappa_beta(const Point& x, const DensityModel& density, double beta);
QuadratureResult kappa_beta_detailed(const Point& x, const DensityModel& density, double beta);

/// kappa(x) = int rho(x+y) (f(x+y) - f(x)) |y|^-d dy.
double kappa(const Point& x, const DensityModel& density, const TargetFunction& target);
QuadratureResult kappa_detailed(const Point& x, const DensityModel& density, const TargetFunction& target);

/// lambda(x) = int rho(x+y) |y|^-d dy; finite only where rho vanishes at x.
double lambda_weight(const Point& x, const DensityModel& density);
QuadratureResult lambda_weight_detailed(const Point& x, const DensityModel& density);

/// |kappa| below this (scaled by 1 + |f(x)|) is the non-generic kappa = 0 case.
inline constexpr double kKappaZeroThreshold = 1e-7;

/// sigma^2(x) / ln n.
AsymptoticPrediction predict_variance(const Point& x, std::uint64_t n, const NoiseModel& noise,
                                      const DensityModel& density, const TargetFunction& target);

struct BiasPrediction {
    AsymptoticPrediction mean_shift;    ///< E[fhat(x)] - f(x) ~ kappa / (omega V_d rho ln n)
    AsymptoticPrediction squared_bias;  ///< its square
    double kappa;
};

BiasPrediction predict_bias(const Point& x, std::uint64_t n, const DensityModel& density,
                            const TargetFunction& target);

/// sigma^2(x)/ln n plus the squared-bias prediction.
AsymptoticPrediction predict_regression_risk(const Point& x, std::uint64_t n, const DensityModel& density,
                                             const TargetFunction& target, const NoiseModel& noise);

/// alpha = 1 : 2 (1+eps) sigma / sqrt(ln n)
/// alpha < 1 : 2 |f - 1/2|^(1-alpha) (1+eps)^alpha sigma^alpha (ln n)^(-alpha/2)
AsymptoticPrediction predict_classification_bound(const Point& x, std::uint64_t n, double alpha,
                                                  const TargetFunction& target, const NoiseModel& noise,
                                                  double epsilon = 0.0);

/// Limit 1 / (1 + Z) of the expected Lagrange function.
double lagrange_prediction(double z);

enum class ScaleMode { leading_order, implicit_wn };

/// Z = omega V_d rho(x) |x - x0|^d * (n ln n) in leading_order mode, or * 1/W_n with
/// the exact root in implicit_wn mode.
double lagrange_scale_z(const Point& x, const Point& x0, std::uint64_t n, const DensityModel& density,
                        ScaleMode mode);

/// Large-n mean of fhat at an exterior point:
/// int rho f |x-y|^-d dy / int rho |x-y|^-d dy.
double extrapolation_limit(const Point& x, const DensityModel& density, const TargetFunction& target);

/// kappa(x) / lambda(x), the limiting bias where rho(x) = 0.
double rho_zero_limit(const Point& x, const DensityModel& density, const TargetFunction& target);

/// rho-mean of f, the far-field limit of the extrapolation.
double rho_mean(const DensityModel& density, const TargetFunction& target);

/// p(w) = 1 / (1 + w)^2 and its CDF w / (1 + w).
double scaling_pdf(double w);
double scaling_cdf(double w);

struct ExceedancePrediction {
    double heuristic;  ///< (1 - eps) / (eps n ln n)
    double chebyshev;  ///< (1 + delta) / (eps^2 n ln n)
    double markov;     ///< 1 / (eps n)
};

ExceedancePrediction predict_exceedance(double epsilon, std::uint64_t n, double delta = 0.0);

}  // namespace hilbert
