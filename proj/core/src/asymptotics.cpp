#include "hilbert/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hilbert/errors.hpp"

namespace hilbert {

namespace {

double n_log_n(std::uint64_t n) {
    const double nd = static_cast<double>(n);
    return nd * std::log(nd);
}

void require_n(std::uint64_t n) {
    if (n < 3) throw InvalidArgument("asymptotic predictions need n >= 3");
}

double dimension(const DensityModel& density) { return static_cast<double>(density.dim()); }

}  // namespace

ScaleWn solve_wn(std::uint64_t n) {
    require_n(n);
    const double nd = static_cast<double>(n);
    const double target = 1.0 / nd;
    ScaleWn s{n, 0.0, 1.0 / n_log_n(n), 1.0 / (nd * std::log(n_log_n(n)))};

    double w = s.second_order;
    for (int it = 0; it < 100; ++it) {
        const double g = w * std::log(1.0 / w) - target;
        const double dg = std::log(1.0 / w) - 1.0;
        double next = w - g / dg;
        if (next <= 0.0) next = 0.5 * w;
        const bool done = std::abs(next - w) <= 1e-17 * w;
        w = next;
        if (done) {
            s.exact = w;
            const double residual = std::abs(w * std::log(1.0 / w) - target) * nd;
            if (residual < 1e-14) return s;
        }
    }
    const double residual = std::abs(w * std::log(1.0 / w) - target) * nd;
    if (residual < 1e-14) {
        s.exact = w;
        return s;
    }
    throw ConvergenceError("W_n Newton iteration did not converge for n = " + std::to_string(n));
}

std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::moment_beta: return "moment_beta";
        case Quantity::variance: return "variance";
        case Quantity::bias: return "bias";
        case Quantity::squared_bias: return "squared_bias";
        case Quantity::risk: return "risk";
        case Quantity::classification_bound: return "classification_bound";
        case Quantity::lagrange: return "lagrange";
        case Quantity::extrapolation_limit: return "extrapolation_limit";
        case Quantity::rho_zero_limit: return "rho_zero_limit";
        case Quantity::exceedance: return "exceedance";
    }
    return "unknown";
}

double local_mass_scale(const Point& x, const DensityModel& density) {
    const double rho = density.pdf(x.coords());
    const auto where = density.classify(x.coords());
    if (!(rho > 0.0) || !where.solid_angle) {
        throw DomainError("prediction undefined: rho(x) = 0 at the query point");
    }
    return *where.solid_angle * unit_ball_volume(density.dim()) * rho;
}

AsymptoticPrediction predict_moment(double beta, std::uint64_t n, const Point& x, const DensityModel& density) {
    require_n(n);
    AsymptoticPrediction p{Quantity::moment_beta, 0.0, {}};
    if (beta == 1.0) {
        p.value = 1.0 / (static_cast<double>(n) + 1.0);
        p.validity_note = "exact first moment 1/(n+1)";
        return p;
    }
    if (beta == 0.0) {
        p.value = 1.0;
        p.validity_note = "zeroth moment";
        return p;
    }
    const double scale = local_mass_scale(x, density);
    if (beta > 1.0) {
        p.value = 1.0 / ((beta - 1.0) * n_log_n(n));
        return p;
    }
    if (beta <= -1.0) {
        p.value = std::numeric_limits<double>::infinity();
        p.divergent = true;
        p.validity_note = "moments of order beta <= -1 do not exist";
        return p;
    }
    const double d = dimension(density);
    const auto k = singular_integral(density, x.coords(), beta * d,
                                     [&](std::span<const double> z) { return density.pdf(z); });
    p.value = k.value / std::pow(scale * n_log_n(n), beta);
    if (beta < 0.0) {
        p.conjecture = true;
        p.validity_note = "conjectured equivalent for -1 < beta < 0";
    }
    return p;
}

QuadratureResult kappa_beta_detailed(const Point& x, const DensityModel& density, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("kappa_beta needs 0 < beta < 1");
    if (x.dim() != density.dim()) throw InvalidArgument("point dimension does not match density");
    return singular_integral(density, x.coords(), beta * dimension(density),
                             [&](std::span<const double> z) { return density.pdf(z); });
}

double kappa_beta(const Point& x, const DensityModel& density, double beta) {
    return kappa_beta_detailed(x, density, beta).value;
}

QuadratureResult kappa_detailed(const Point& x, const DensityModel& density, const TargetFunction& target) {
    if (x.dim() != density.dim()) throw InvalidArgument("point dimension does not match density");
    if (auto d = target.required_dim(); d && *d != density.dim()) {
        throw InvalidArgument("target dimension does not match density");
    }
    const double fx = target(x);
    return singular_integral(density, x.coords(), dimension(density), [&](std::span<const double> z) {
        const double rho = density.pdf(z);
        return rho == 0.0 ? 0.0 : rho * (target(z) - fx);
    });
}

double kappa(const Point& x, const DensityModel& density, const TargetFunction& target) {
    return kappa_detailed(x, density, target).value;
}

QuadratureResult lambda_weight_detailed(const Point& x, const DensityModel& density) {
    if (x.dim() != density.dim()) throw InvalidArgument("point dimension does not match density");
    if (density.pdf(x.coords()) > 0.0) {
        throw DomainError("lambda(x) is infinite where rho(x) > 0");
    }
    return singular_integral(density, x.coords(), dimension(density),
                             [&](std::span<const double> z) { return density.pdf(z); });
}

double lambda_weight(const Point& x, const DensityModel& density) { return lambda_weight_detailed(x, density).value; }

AsymptoticPrediction predict_variance(const Point& x, std::uint64_t n, const NoiseModel& noise,
                                      const DensityModel& density, const TargetFunction& target) {
    require_n(n);
    local_mass_scale(x, density);
    const double var = noise.variance(x.coords(), target(x));
    AsymptoticPrediction p{Quantity::variance, var / std::log(static_cast<double>(n)), {}};
    if (var == 0.0) p.validity_note = "sigma(x) = 0: upper-bound regime only";
    return p;
}

BiasPrediction predict_bias(const Point& x, std::uint64_t n, const DensityModel& density,
                            const TargetFunction& target) {
    require_n(n);
    const double scale = local_mass_scale(x, density);
    const double k = kappa(x, density, target);
    BiasPrediction b{{Quantity::bias, 0.0, {}}, {Quantity::squared_bias, 0.0, {}}, k};
    if (std::abs(k) < kKappaZeroThreshold * (1.0 + std::abs(target(x)))) {
        const std::string note = "non-generic kappa(x) = 0: only order-of-magnitude bias rates apply";
        b.mean_shift.validity_note = note;
        b.squared_bias.validity_note = note;
        return b;
    }
    b.mean_shift.value = k / (scale * std::log(static_cast<double>(n)));
    b.squared_bias.value = b.mean_shift.value * b.mean_shift.value;
    return b;
}

AsymptoticPrediction predict_regression_risk(const Point& x, std::uint64_t n, const DensityModel& density,
                                             const TargetFunction& target, const NoiseModel& noise) {
    const auto v = predict_variance(x, n, noise, density, target);
    const auto b = predict_bias(x, n, density, target);
    AsymptoticPrediction p{Quantity::risk, v.value + b.squared_bias.value, v.validity_note};
    if (!b.squared_bias.validity_note.empty()) {
        p.validity_note += (p.validity_note.empty() ? "" : "; ") + b.squared_bias.validity_note;
    }
    return p;
}

AsymptoticPrediction predict_classification_bound(const Point& x, std::uint64_t n, double alpha,
                                                  const TargetFunction& target, const NoiseModel& noise,
                                                  double epsilon) {
    require_n(n);
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
    if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be >= 0");
    const double fx = target(x);
    if (!(fx >= 0.0 && fx <= 1.0)) throw DomainError("classification bound needs f(x) in [0, 1]");
    const double sigma = noise.sigma(x.coords(), fx);
    const double ln_n = std::log(static_cast<double>(n));
    AsymptoticPrediction p{Quantity::classification_bound, 0.0, {}};
    if (alpha == 1.0) {
        p.value = 2.0 * (1.0 + epsilon) * sigma / std::sqrt(ln_n);
    } else {
        p.value = 2.0 * std::pow(std::abs(fx - 0.5), 1.0 - alpha) * std::pow(1.0 + epsilon, alpha) *
                  std::pow(sigma, alpha) * std::pow(ln_n, -0.5 * alpha);
    }
    return p;
}

double lagrange_prediction(double z) {
    if (!(z >= 0.0)) throw InvalidArgument("Z must be >= 0");
    return 1.0 / (1.0 + z);
}

double lagrange_scale_z(const Point& x, const Point& x0, std::uint64_t n, const DensityModel& density,
                        ScaleMode mode) {
    require_n(n);
    if (x0.dim() != x.dim()) throw InvalidArgument("x and x0 dimensions differ");
    const double scale = local_mass_scale(x, density);
    const double r = euclidean_distance(x.coords(), x0.coords());
    const double inv_w = mode == ScaleMode::leading_order ? n_log_n(n) : 1.0 / solve_wn(n).exact;
    return scale * std::pow(r, dimension(density)) * inv_w;
}

double extrapolation_limit(const Point& x, const DensityModel& density, const TargetFunction& target) {
    if (x.dim() != density.dim()) throw InvalidArgument("point dimension does not match density");
    if (density.classify(x.coords()).location != LocationClass::exterior) {
        throw DomainError("extrapolation limit needs a point outside the closed support");
    }
    const double d = dimension(density);
    const auto num = singular_integral(density, x.coords(), d, [&](std::span<const double> z) {
        const double rho = density.pdf(z);
        return rho == 0.0 ? 0.0 : rho * target(z);
    });
    const auto den = singular_integral(density, x.coords(), d, [&](std::span<const double> z) { return density.pdf(z); });
    return num.value / den.value;
}

double rho_zero_limit(const Point& x, const DensityModel& density, const TargetFunction& target) {
    if (x.dim() != density.dim()) throw InvalidArgument("point dimension does not match density");
    if (density.pdf(x.coords()) > 0.0) throw DomainError("rho_zero_limit needs rho(x) = 0");
    return kappa(x, density, target) / lambda_weight(x, density);
}

double rho_mean(const DensityModel& density, const TargetFunction& target) {
    const std::vector<double> origin(density.dim(), 0.0);
    const Point anchor = density.project_to_support(origin);
    return singular_integral(density, anchor.coords(), 0.0, [&](std::span<const double> z) {
               const double rho = density.pdf(z);
               return rho == 0.0 ? 0.0 : rho * target(z);
           }).value;
}

double scaling_pdf(double w) {
    if (!(w >= 0.0)) throw InvalidArgument("scaling variable must be >= 0");
    return 1.0 / ((1.0 + w) * (1.0 + w));
}

double scaling_cdf(double w) {
    if (!(w >= 0.0)) throw InvalidArgument("scaling variable must be >= 0");
    return w / (1.0 + w);
}

ExceedancePrediction predict_exceedance(double epsilon, std::uint64_t n, double delta) {
    require_n(n);
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
    const double nl = n_log_n(n);
    return {(1.0 - epsilon) / (epsilon * nl), (1.0 + delta) / (epsilon * epsilon * nl),
            1.0 / (epsilon * static_cast<double>(n))};
}

}  // namespace hilbert
