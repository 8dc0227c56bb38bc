#include "hilbert/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "hilbert/constants.hpp"
#include "hilbert/errors.hpp"
#include "hilbert/rng.hpp"

namespace hilbert {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Accumulated {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    double l1;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk_panel(F& f, double a, double b) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = Rule::integrate(f, a, b, 0, 0.0, &err, &l1);
    return {a, b, v, err, l1};
}

// Globally adaptive: bisect the panel with the largest error estimate until the
// summed error meets the relative tolerance, the roundoff floor of the L1 norm,
// or *abs_floor when given (read on every step, so callers may raise it).
template <class F>
Accumulated integrate_finite(F& f, double a, double b, const QuadratureOptions& opt,
                             const double* abs_floor = nullptr) {
    std::priority_queue<Panel> heap;
    Panel first = gk_panel(f, a, b);
    double value = first.value, error = first.error, l1 = first.l1;
    heap.push(first);
    constexpr double kFloor = 64.0 * std::numeric_limits<double>::epsilon();
    while (heap.size() < opt.max_panels) {
        double target = std::max(opt.relative_tolerance * std::abs(value), kFloor * l1);
        if (abs_floor) target = std::max(target, *abs_floor);
        if (error <= target) break;
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        const Panel left = gk_panel(f, worst.a, mid);
        const Panel right = gk_panel(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
    }
    // Re-add to shed the drift of the running updates.
    value = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error, l1};
}

// Semi-infinite and infinite ranges use the rational maps
// r = a + t / (1 - t) on [0, 1) and s = t / (1 - t^2) on (-1, 1).
template <class F>
Accumulated integrate(F&& f, double a, double b, const QuadratureOptions& opt, const double* abs_floor = nullptr) {
    if (std::isinf(a) && std::isinf(b)) {
        auto g = [&](double t) {
            const double u = 1.0 - t * t;
            if (u <= 0.0) return 0.0;
            const double s = t / u;
            return f(s) * (1.0 + t * t) / (u * u);
        };
        return integrate_finite(g, -1.0, 1.0, opt, abs_floor);
    }
    if (std::isinf(b)) {
        auto g = [&](double t) {
            const double u = 1.0 - t;
            if (u <= 0.0) return 0.0;
            return f(a + t / u) / (u * u);
        };
        return integrate_finite(g, 0.0, 1.0, opt, abs_floor);
    }
    return integrate_finite(f, a, b, opt, abs_floor);
}

class RadialPair {
public:
    RadialPair(const DensityModel& density, std::span<const double> x, double power, const PointIntegrand& g,
               const QuadratureOptions& opt)
        : density_(density), x_(x), power_(power), g_(g), opt_(opt), z_(x.size()), dir_(x.size()), neg_(x.size()) {}

    // Integral over r > 0 of [g(x + r u) + g(x - r u)] r^(d-1-power).
    Accumulated operator()(std::span<const double> u) {
        std::copy(u.begin(), u.end(), dir_.begin());
        for (std::size_t k = 0; k < u.size(); ++k) neg_[k] = -u[k];

        std::vector<RaySegment> segs = density_.ray_segments(x_, dir_);
        auto back = density_.ray_segments(x_, neg_);
        segs.insert(segs.end(), back.begin(), back.end());
        if (segs.empty()) return {};

        std::vector<double> cuts;
        for (const auto& s : segs) {
            cuts.push_back(s.begin);
            cuts.push_back(s.end);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        const double q = static_cast<double>(x_.size()) - 1.0 - power_;
        auto h = [&](double r) {
            if (!(r > 0.0)) return 0.0;
            double s = 0.0;
            for (const auto* d : {&dir_, &neg_}) {
                for (std::size_t k = 0; k < z_.size(); ++k) z_[k] = x_[k] + r * (*d)[k];
                s += g_(z_);
            }
            return s == 0.0 ? 0.0 : s * std::pow(r, q);
        };
        auto covered = [&](double a, double b) {
            const double mid = std::isinf(b) ? a + 1.0 : 0.5 * (a + b);
            return std::any_of(segs.begin(), segs.end(), [&](const RaySegment& s) { return s.begin <= mid && mid <= s.end; });
        };

        Accumulated total;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double a = cuts[i];
            const double b = cuts[i + 1];
            if (!(b > a) || !covered(a, b)) continue;
            Accumulated piece;
            if (a == 0.0) {
                // r = b e^-t, dr = r dt
                auto mapped = [&](double t) {
                    const double r = b * std::exp(-t);
                    return r > 0.0 ? h(r) * r : 0.0;
                };
                if (std::isinf(b)) {
                    // r = e^s over the whole line
                    auto line = [&](double s) {
                        const double r = std::exp(s);
                        return (r > 0.0 && std::isfinite(r)) ? h(r) * r : 0.0;
                    };
                    piece = integrate(line, -kInf, kInf, opt_);
                } else {
                    piece = integrate(mapped, 0.0, kInf, opt_);
                }
            } else {
                piece = integrate(h, a, b, opt_);
            }
            total.value += piece.value;
            total.error += piece.error;
            total.l1 += piece.l1;
        }
        return total;
    }

private:
    const DensityModel& density_;
    std::span<const double> x_;
    double power_;
    const PointIntegrand& g_;
    const QuadratureOptions& opt_;
    std::vector<double> z_;
    std::vector<double> dir_;
    std::vector<double> neg_;
};

}  // namespace

QuadratureResult singular_integral(const DensityModel& density, std::span<const double> x, double power,
                                   const PointIntegrand& g, const QuadratureOptions& options) {
    const std::size_t d = density.dim();
    if (x.size() != d) throw InvalidArgument("quadrature point dimension does not match density");
    RadialPair radial(density, x, power, g, options);

    QuadratureResult result{0.0, 0.0, false};
    if (d == 1) {
        const double u = 1.0;
        const auto r = radial(std::span<const double>(&u, 1));
        result = {r.value, r.error, false};
    } else if (d == 2) {
        std::vector<double> cuts = density.angular_breakpoints(x);
        cuts.push_back(0.0);
        cuts.push_back(kPi);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        double inner_error = 0.0;
        // Inner values carry relative noise ~ tolerance * (their L1 norm); when
        // the angular integral cancels, that noise is all the outer rule sees.
        double noise_floor = 0.0;
        auto angular = [&](double theta) {
            const double u[2] = {std::cos(theta), std::sin(theta)};
            const auto r = radial(std::span<const double>(u, 2));
            inner_error = std::max(inner_error, r.error);
            noise_floor = std::max(noise_floor, 10.0 * kPi * (r.error + options.relative_tolerance * r.l1));
            return r.value;
        };
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (!(cuts[i + 1] > cuts[i])) continue;
            const auto piece = integrate(angular, cuts[i], cuts[i + 1], options, &noise_floor);
            result.value += piece.value;
            result.error += piece.error;
        }
        result.error += kPi * inner_error;
    } else {
        // Monte Carlo over directions; the radial part stays deterministic.
        Rng rng(options.mc_seed);
        std::vector<double> u(d);
        double mean = 0.0;
        double m2 = 0.0;
        const std::size_t m = std::max<std::size_t>(options.mc_directions, 2);
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0.0;
            for (auto& c : u) {
                c = rng.normal();
                s += c * c;
            }
            const double inv = 1.0 / std::sqrt(s);
            for (auto& c : u) c *= inv;
            const double v = 0.5 * radial(u).value;
            const double delta = v - mean;
            mean += delta / static_cast<double>(i + 1);
            m2 += delta * (v - mean);
        }
        const double area = unit_sphere_area(d);
        const double var = m2 / static_cast<double>(m - 1);
        return {area * mean, area * std::sqrt(var / static_cast<double>(m)), true};
    }

    if (!std::isfinite(result.value) || result.error > options.failure_threshold * std::max(1.0, std::abs(result.value))) {
        std::ostringstream msg;
        msg << "singular quadrature did not converge: value " << result.value << ", error estimate " << result.error
            << ", power " << power << ", density " << density.name();
        throw ConvergenceError(msg.str());
    }
    return result;
}

}  // namespace hilbert
