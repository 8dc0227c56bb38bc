#include "hilbert/densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hilbert/constants.hpp"
#include "hilbert/errors.hpp"

namespace hilbert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

void check_dim(std::span<const double> x, std::size_t d) {
    if (x.size() != d) {
        throw InvalidArgument("point dimension " + std::to_string(x.size()) + " does not match density dimension " +
                              std::to_string(d));
    }
}

// Uniform direction on the unit sphere via a normalized Gaussian vector.
void random_direction(Rng& rng, std::span<double> out) {
    if (out.size() == 1) {
        out[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
        return;
    }
    double s = 0.0;
    do {
        s = 0.0;
        for (auto& c : out) {
            c = rng.normal();
            s += c * c;
        }
    } while (s == 0.0);
    const double inv = 1.0 / std::sqrt(s);
    for (auto& c : out) c *= inv;
}

// Slab intersection of x + r*dir, r >= 0, with [lo, hi].
std::vector<RaySegment> box_segments(std::span<const double> x, std::span<const double> dir,
                                     std::span<const double> lo, std::span<const double> hi) {
    double tmin = 0.0;
    double tmax = kInf;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (dir[k] == 0.0) {
            if (x[k] < lo[k] || x[k] > hi[k]) return {};
            continue;
        }
        double t1 = (lo[k] - x[k]) / dir[k];
        double t2 = (hi[k] - x[k]) / dir[k];
        if (t1 > t2) std::swap(t1, t2);
        tmin = std::max(tmin, t1);
        tmax = std::min(tmax, t2);
    }
    if (!(tmax > tmin)) return {};
    return {{tmin, tmax}};
}

double wrap_half_turn(double a) {
    a = std::fmod(a, kPi);
    if (a < 0.0) a += kPi;
    return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityModel
// ---------------------------------------------------------------------------

DensityModel DensityModel::uniform_box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.empty() || lo.size() != hi.size()) throw InvalidArgument("box bounds must be non-empty and equal length");
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (!std::isfinite(lo[k]) || !std::isfinite(hi[k]) || !(lo[k] < hi[k])) {
            throw InvalidArgument("box bounds must be finite with lo < hi");
        }
    }
    const auto d = lo.size();
    return DensityModel(UniformBox{std::move(lo), std::move(hi)}, d);
}

DensityModel DensityModel::unit_cube(std::size_t dim) {
    return uniform_box(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

DensityModel DensityModel::uniform_ball(std::vector<double> center, double radius) {
    if (center.empty()) throw InvalidArgument("ball center must have dimension >= 1");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("ball radius must be positive");
    const auto d = center.size();
    return DensityModel(UniformBall{std::move(center), radius}, d);
}

DensityModel DensityModel::triangular() { return DensityModel(Triangular1D{}, 1); }

DensityModel DensityModel::radial_heavy_tail(std::size_t dim) {
    if (dim == 0) throw InvalidArgument("dimension must be >= 1");
    return DensityModel(RadialHeavyTail{dim}, dim);
}

std::string DensityModel::name() const {
    return std::visit(Overloaded{
                          [](const UniformBox&) { return std::string("uniform_box"); },
                          [](const UniformBall&) { return std::string("uniform_ball"); },
                          [](const Triangular1D&) { return std::string("triangular"); },
                          [](const RadialHeavyTail&) { return std::string("radial_heavy_tail"); },
                      },
                      kind_);
}

bool DensityModel::bounded() const noexcept { return !std::holds_alternative<RadialHeavyTail>(kind_); }

double DensityModel::pdf(std::span<const double> x) const {
    check_dim(x, dim_);
    return std::visit(Overloaded{
                          [&](const UniformBox& b) {
                              double vol = 1.0;
                              for (std::size_t k = 0; k < dim_; ++k) {
                                  if (x[k] < b.lo[k] || x[k] > b.hi[k]) return 0.0;
                                  vol *= b.hi[k] - b.lo[k];
                              }
                              return 1.0 / vol;
                          },
                          [&](const UniformBall& b) {
                              double s = 0.0;
                              for (std::size_t k = 0; k < dim_; ++k) s += (x[k] - b.center[k]) * (x[k] - b.center[k]);
                              if (std::sqrt(s) > b.radius) return 0.0;
                              return 1.0 / (unit_ball_volume(dim_) * std::pow(b.radius, static_cast<double>(dim_)));
                          },
                          [&](const Triangular1D&) { return (x[0] < 0.0 || x[0] > 1.0) ? 0.0 : 2.0 * x[0]; },
                          [&](const RadialHeavyTail&) {
                              const double rd = std::pow(norm(x), static_cast<double>(dim_));
                              return 1.0 / (unit_ball_volume(dim_) * (1.0 + rd) * (1.0 + rd));
                          },
                      },
                      kind_);
}

SupportQuery DensityModel::classify(std::span<const double> x) const {
    check_dim(x, dim_);
    constexpr double tol = kBoundaryTolerance;
    auto interval = [&](std::span<const double> lo, std::span<const double> hi) -> SupportQuery {
        int active = 0;
        for (std::size_t k = 0; k < dim_; ++k) {
            if (x[k] < lo[k] - tol || x[k] > hi[k] + tol) return {LocationClass::exterior, std::nullopt};
            if (std::abs(x[k] - lo[k]) <= tol || std::abs(x[k] - hi[k]) <= tol) ++active;
        }
        if (active == 0) return {LocationClass::interior, 1.0};
        return {LocationClass::boundary, std::ldexp(1.0, -active)};
    };
    return std::visit(Overloaded{
                          [&](const UniformBox& b) { return interval(b.lo, b.hi); },
                          [&](const UniformBall& b) -> SupportQuery {
                              double s = 0.0;
                              for (std::size_t k = 0; k < dim_; ++k) s += (x[k] - b.center[k]) * (x[k] - b.center[k]);
                              const double r = std::sqrt(s);
                              if (r > b.radius + tol) return {LocationClass::exterior, std::nullopt};
                              if (std::abs(r - b.radius) <= tol) return {LocationClass::boundary, 0.5};
                              return {LocationClass::interior, 1.0};
                          },
                          [&](const Triangular1D&) {
                              const double lo = 0.0;
                              const double hi = 1.0;
                              return interval({&lo, 1}, {&hi, 1});
                          },
                          [&](const RadialHeavyTail&) { return SupportQuery{LocationClass::interior, 1.0}; },
                      },
                      kind_);
}

void DensityModel::sample(Rng& rng, std::span<double> out) const {
    std::visit(Overloaded{
                   [&](const UniformBox& b) {
                       for (std::size_t k = 0; k < dim_; ++k) out[k] = b.lo[k] + (b.hi[k] - b.lo[k]) * rng.uniform();
                   },
                   [&](const UniformBall& b) {
                       if (dim_ == 1) {
                           out[0] = b.center[0] + b.radius * (2.0 * rng.uniform() - 1.0);
                           return;
                       }
                       random_direction(rng, out);
                       const double r = b.radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim_));
                       for (std::size_t k = 0; k < dim_; ++k) out[k] = b.center[k] + r * out[k];
                   },
                   [&](const Triangular1D&) { out[0] = std::sqrt(rng.uniform()); },
                   [&](const RadialHeavyTail&) {
                       const double a = rng.uniform();
                       const double r = std::pow(a / (1.0 - a), 1.0 / static_cast<double>(dim_));
                       random_direction(rng, out);
                       for (auto& c : out) c *= r;
                   },
               },
               kind_);
}

Point DensityModel::project_to_support(std::span<const double> x) const {
    check_dim(x, dim_);
    std::vector<double> p(x.begin(), x.end());
    std::visit(Overloaded{
                   [&](const UniformBox& b) {
                       for (std::size_t k = 0; k < dim_; ++k) p[k] = std::clamp(p[k], b.lo[k], b.hi[k]);
                   },
                   [&](const UniformBall& b) {
                       double s = 0.0;
                       for (std::size_t k = 0; k < dim_; ++k) s += (p[k] - b.center[k]) * (p[k] - b.center[k]);
                       const double r = std::sqrt(s);
                       if (r <= b.radius) return;
                       for (std::size_t k = 0; k < dim_; ++k) p[k] = b.center[k] + (p[k] - b.center[k]) * b.radius / r;
                   },
                   [&](const Triangular1D&) { p[0] = std::clamp(p[0], 0.0, 1.0); },
                   [&](const RadialHeavyTail&) {},
               },
               kind_);
    return Point(std::move(p));
}

std::vector<RaySegment> DensityModel::ray_segments(std::span<const double> x, std::span<const double> dir) const {
    check_dim(x, dim_);
    return std::visit(Overloaded{
                          [&](const UniformBox& b) { return box_segments(x, dir, b.lo, b.hi); },
                          [&](const UniformBall& b) -> std::vector<RaySegment> {
                              double bq = 0.0;
                              double cq = -b.radius * b.radius;
                              for (std::size_t k = 0; k < dim_; ++k) {
                                  const double o = x[k] - b.center[k];
                                  bq += o * dir[k];
                                  cq += o * o;
                              }
                              const double disc = bq * bq - cq;
                              if (disc <= 0.0) return {};
                              const double root = std::sqrt(disc);
                              const double t1 = std::max(-bq - root, 0.0);
                              const double t2 = -bq + root;
                              if (!(t2 > t1)) return {};
                              return {{t1, t2}};
                          },
                          [&](const Triangular1D&) {
                              const double lo = 0.0;
                              const double hi = 1.0;
                              return box_segments(x, dir, {&lo, 1}, {&hi, 1});
                          },
                          [&](const RadialHeavyTail&) { return std::vector<RaySegment>{{0.0, kInf}}; },
                      },
                      kind_);
}

std::vector<double> DensityModel::angular_breakpoints(std::span<const double> x) const {
    check_dim(x, dim_);
    std::vector<double> angles;
    if (dim_ != 2) return angles;
    std::visit(Overloaded{
                   [&](const UniformBox& b) {
                       angles.push_back(0.0);
                       angles.push_back(0.5 * kPi);
                       for (int cx = 0; cx < 2; ++cx) {
                           for (int cy = 0; cy < 2; ++cy) {
                               const double dx = (cx ? b.hi[0] : b.lo[0]) - x[0];
                               const double dy = (cy ? b.hi[1] : b.lo[1]) - x[1];
                               if (dx != 0.0 || dy != 0.0) angles.push_back(wrap_half_turn(std::atan2(dy, dx)));
                           }
                       }
                   },
                   [&](const UniformBall& b) {
                       const double dx = b.center[0] - x[0];
                       const double dy = b.center[1] - x[1];
                       const double r = std::hypot(dx, dy);
                       if (r < b.radius * (1.0 - 1e-12)) return;
                       const double a = std::atan2(dy, dx);
                       const double half = std::asin(std::min(1.0, b.radius / r));
                       angles.push_back(wrap_half_turn(a));
                       angles.push_back(wrap_half_turn(a - half));
                       angles.push_back(wrap_half_turn(a + half));
                   },
                   [&](const Triangular1D&) {},
                   [&](const RadialHeavyTail&) {},
               },
               kind_);
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(), [](double u, double v) { return std::abs(u - v) < 1e-14; }),
                 angles.end());
    return angles;
}

double pdf(const DensityModel& density, const Point& x) { return density.pdf(x.coords()); }

SupportQuery classify_location(const DensityModel& density, const Point& x) { return density.classify(x.coords()); }

// ---------------------------------------------------------------------------
// TargetFunction
// ---------------------------------------------------------------------------

TargetFunction::TargetFunction(Kind kind) : kind_(std::move(kind)) {
    std::visit(Overloaded{
                   [](const ConstantTarget& c) {
                       if (!std::isfinite(c.value)) throw InvalidArgument("constant target must be finite");
                   },
                   [](const LinearTarget& l) {
                       if (l.slope.empty()) throw InvalidArgument("linear target needs a non-empty slope");
                   },
                   [](const Sine1D&) {},
                   [](const ClampedLogistic& g) {
                       if (!(0.0 <= g.floor && g.floor <= g.ceiling && g.ceiling <= 1.0)) {
                           throw InvalidArgument("logistic target needs 0 <= floor <= ceiling <= 1");
                       }
                   },
                   [](const Polynomial1D& p) {
                       if (p.coeffs.empty()) throw InvalidArgument("polynomial target needs coefficients");
                   },
               },
               kind_);
}

double TargetFunction::operator()(std::span<const double> x) const {
    return std::visit(Overloaded{
                          [&](const ConstantTarget& c) { return c.value; },
                          [&](const LinearTarget& l) {
                              double s = l.intercept;
                              for (std::size_t k = 0; k < l.slope.size(); ++k) s += l.slope[k] * x[k];
                              return s;
                          },
                          [&](const Sine1D&) { return std::sin(2.0 * kPi * x[0]); },
                          [&](const ClampedLogistic& g) {
                              return g.floor + (g.ceiling - g.floor) / (1.0 + std::exp(-g.steepness * (x[0] - g.midpoint)));
                          },
                          [&](const Polynomial1D& p) {
                              double s = 0.0;
                              for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) s = s * x[0] + *it;
                              return s;
                          },
                      },
                      kind_);
}

std::string TargetFunction::name() const {
    return std::visit(Overloaded{
                          [](const ConstantTarget&) { return std::string("constant"); },
                          [](const LinearTarget&) { return std::string("linear"); },
                          [](const Sine1D&) { return std::string("sine"); },
                          [](const ClampedLogistic&) { return std::string("logistic"); },
                          [](const Polynomial1D&) { return std::string("polynomial"); },
                      },
                      kind_);
}

std::optional<std::size_t> TargetFunction::required_dim() const {
    return std::visit(Overloaded{
                          [](const ConstantTarget&) -> std::optional<std::size_t> { return std::nullopt; },
                          [](const LinearTarget& l) -> std::optional<std::size_t> { return l.slope.size(); },
                          [](const Sine1D&) -> std::optional<std::size_t> { return 1; },
                          [](const ClampedLogistic&) -> std::optional<std::size_t> { return std::nullopt; },
                          [](const Polynomial1D&) -> std::optional<std::size_t> { return 1; },
                      },
                      kind_);
}

bool TargetFunction::unit_interval_valued() const {
    return std::visit(Overloaded{
                          [](const ConstantTarget& c) { return c.value >= 0.0 && c.value <= 1.0; },
                          [](const LinearTarget&) { return false; },
                          [](const Sine1D&) { return false; },
                          [](const ClampedLogistic&) { return true; },
                          [](const Polynomial1D&) { return false; },
                      },
                      kind_);
}

// ---------------------------------------------------------------------------
// NoiseModel
// ---------------------------------------------------------------------------

NoiseModel::NoiseModel(Kind kind) : kind_(std::move(kind)) {
    if (const auto* g = std::get_if<GaussianConstant>(&kind_)) {
        if (!(g->sigma >= 0.0) || !std::isfinite(g->sigma)) throw InvalidArgument("noise sigma must be >= 0");
    }
}

std::string NoiseModel::name() const {
    return std::visit(Overloaded{
                          [](const GaussianConstant&) { return std::string("gaussian"); },
                          [](const GaussianHetero&) { return std::string("gaussian_hetero"); },
                          [](const BernoulliFromTarget&) { return std::string("bernoulli"); },
                      },
                      kind_);
}

double NoiseModel::sigma(std::span<const double> x, double fx) const {
    return std::visit(Overloaded{
                          [&](const GaussianConstant& g) { return g.sigma; },
                          [&](const GaussianHetero& h) {
                              const double s = h.sigma(x);
                              if (!(s >= 0.0)) throw DomainError("heteroscedastic sigma(x) is negative");
                              return s;
                          },
                          [&](const BernoulliFromTarget&) {
                              if (!(fx >= 0.0 && fx <= 1.0)) throw DomainError("Bernoulli labels need f(x) in [0, 1]");
                              return std::sqrt(fx * (1.0 - fx));
                          },
                      },
                      kind_);
}

double NoiseModel::variance(std::span<const double> x, double fx) const {
    if (binary()) {
        if (!(fx >= 0.0 && fx <= 1.0)) throw DomainError("Bernoulli labels need f(x) in [0, 1]");
        return fx * (1.0 - fx);
    }
    const double s = sigma(x, fx);
    return s * s;
}

double NoiseModel::draw(Rng& rng, std::span<const double> x, double fx) const {
    return std::visit(Overloaded{
                          [&](const GaussianConstant& g) { return g.sigma == 0.0 ? fx : fx + g.sigma * rng.normal(); },
                          [&](const GaussianHetero&) {
                              const double s = sigma(x, fx);
                              return s == 0.0 ? fx : fx + s * rng.normal();
                          },
                          [&](const BernoulliFromTarget&) { return rng.bernoulli(fx) ? 1.0 : 0.0; },
                      },
                      kind_);
}

// ---------------------------------------------------------------------------

void check_compatible(const DensityModel& density, const TargetFunction& target, const NoiseModel& noise) {
    if (auto d = target.required_dim(); d && *d != density.dim()) {
        throw InvalidArgument("target '" + target.name() + "' needs dimension " + std::to_string(*d) +
                              " but the density has dimension " + std::to_string(density.dim()));
    }
    if (const auto* h = std::get_if<GaussianHetero>(&noise.kind())) {
        if (auto d = h->sigma.required_dim(); d && *d != density.dim()) {
            throw InvalidArgument("noise sigma field dimension does not match the density");
        }
    }
    if (noise.binary() && !target.unit_interval_valued()) {
        throw InvalidArgument("Bernoulli labels need a target with values in [0, 1]");
    }
}

std::vector<double> sample_points(const DensityModel& density, std::size_t count, Rng& rng) {
    const std::size_t d = density.dim();
    std::vector<double> coords(count * d);
    for (std::size_t i = 0; i < count; ++i) density.sample(rng, std::span<double>(coords.data() + i * d, d));
    return coords;
}

Dataset sample_dataset(const DensityModel& density, const TargetFunction& target, const NoiseModel& noise,
                       std::size_t n_plus_1, Rng& rng) {
    if (n_plus_1 < 1) throw InvalidArgument("dataset needs at least one point");
    check_compatible(density, target, noise);
    const std::size_t d = density.dim();
    auto coords = sample_points(density, n_plus_1, rng);
    std::vector<double> labels(n_plus_1);
    for (std::size_t i = 0; i < n_plus_1; ++i) {
        std::span<const double> x(coords.data() + i * d, d);
        labels[i] = noise.draw(rng, x, target(x));
    }
    return Dataset(d, std::move(coords), std::move(labels));
}

Dataset sample_dataset(const DensityModel& density, const TargetFunction& target, const NoiseModel& noise,
                       std::size_t n_plus_1, std::uint64_t seed) {
    Rng rng(seed);
    return sample_dataset(density, target, noise, n_plus_1, rng);
}

}  // namespace hilbert
