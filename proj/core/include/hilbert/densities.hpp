#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hilbert/geometry.hpp"
#include "hilbert/rng.hpp"

namespace hilbert {

// ---------------------------------------------------------------------------
// Sampling densities
// ---------------------------------------------------------------------------

struct UniformBox {
    std::vector<double> lo;
    std::vector<double> hi;
};

struct UniformBall {
    std::vector<double> center;
    double radius;
};

/// rho(y) = 2y on [0, 1]; vanishes linearly at y = 0.
struct Triangular1D {};

/// rho(x) = 1 / (V_d (1 + |x|^d)^2) on all of R^d. |x|^d = a / (1 - a) for
/// a ~ U[0, 1), with an isotropic direction.
struct RadialHeavyTail {
    std::size_t dim;
};

enum class LocationClass { interior, boundary, exterior };

struct SupportQuery {
    LocationClass location;
    /// Local solid angle; absent for exterior points.
    std::optional<double> solid_angle;
};

/// Parameter interval [begin, end] along a ray; end may be +infinity.
struct RaySegment {
    double begin;
    double end;
};

/// Points within this distance of a face are classified as boundary points.
inline constexpr double kBoundaryTolerance = 1e-12;

class DensityModel {
public:
    using Kind = std::variant<UniformBox, UniformBall, Triangular1D, RadialHeavyTail>;

    static DensityModel uniform_box(std::vector<double> lo, std::vector<double> hi);
    static DensityModel unit_cube(std::size_t dim);
    static DensityModel uniform_ball(std::vector<double> center, double radius);
    static DensityModel triangular();
    static DensityModel radial_heavy_tail(std::size_t dim);

    const Kind& kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }
    std::string name() const;
    bool bounded() const noexcept;

    double pdf(std::span<const double> x) const;
    SupportQuery classify(std::span<const double> x) const;
    void sample(Rng& rng, std::span<double> out) const;

    /// Nearest point of the closed support.
    Point project_to_support(std::span<const double> x) const;

    /// Portions r >= 0 of the ray x + r*dir lying in the closed support
    /// (|dir| = 1). Used to split singular quadratures at the support edges.
    std::vector<RaySegment> ray_segments(std::span<const double> x, std::span<const double> dir) const;

    /// For d = 2: polar angles in [0, pi) where the paired radial integrand
    /// around x has kinks (corner and tangent directions). Empty otherwise.
    std::vector<double> angular_breakpoints(std::span<const double> x) const;

private:
    DensityModel(Kind kind, std::size_t dim) : kind_(std::move(kind)), dim_(dim) {}

    Kind kind_;
    std::size_t dim_;
};

double pdf(const DensityModel& density, const Point& x);
SupportQuery classify_location(const DensityModel& density, const Point& x);

// ---------------------------------------------------------------------------
// Regression targets f(x) = E[Y | X = x]
// ---------------------------------------------------------------------------

struct ConstantTarget {
    double value;
};

/// slope . x + intercept; the slope length fixes the dimension.
struct LinearTarget {
    std::vector<double> slope;
    double intercept;
};

/// sin(2 pi x), d = 1.
struct Sine1D {};

/// floor + (ceiling - floor) / (1 + exp(-steepness (x_0 - midpoint))), values in [0, 1].
struct ClampedLogistic {
    double steepness;
    double midpoint;
    double floor;
    double ceiling;
};

/// sum_k coeffs[k] x^k, d = 1.
struct Polynomial1D {
    std::vector<double> coeffs;
};

class TargetFunction {
public:
    using Kind = std::variant<ConstantTarget, LinearTarget, Sine1D, ClampedLogistic, Polynomial1D>;

    TargetFunction(Kind kind);  // NOLINT(google-explicit-constructor)

    static TargetFunction constant(double c) { return TargetFunction(ConstantTarget{c}); }
    static TargetFunction linear(std::vector<double> slope, double intercept) {
        return TargetFunction(LinearTarget{std::move(slope), intercept});
    }
    static TargetFunction sine() { return TargetFunction(Sine1D{}); }
    static TargetFunction logistic(double steepness, double midpoint, double floor = 0.0,
                                   double ceiling = 1.0) {
        return TargetFunction(ClampedLogistic{steepness, midpoint, floor, ceiling});
    }
    static TargetFunction polynomial(std::vector<double> coeffs) {
        return TargetFunction(Polynomial1D{std::move(coeffs)});
    }

    double operator()(std::span<const double> x) const;
    double operator()(const Point& x) const { return (*this)(x.coords()); }

    const Kind& kind() const noexcept { return kind_; }
    std::string name() const;
    /// Dimension the target requires; nullopt when any dimension works.
    std::optional<std::size_t> required_dim() const;
    /// True when every value lies in [0, 1].
    bool unit_interval_valued() const;

private:
    Kind kind_;
};

// ---------------------------------------------------------------------------
// Label noise around f
// ---------------------------------------------------------------------------

struct GaussianConstant {
    double sigma;
};

/// Gaussian noise with sigma(x) given by a non-negative field.
struct GaussianHetero {
    TargetFunction sigma;
};

/// Labels ~ Bernoulli(f(x)); sigma^2(x) = f(x)(1 - f(x)).
struct BernoulliFromTarget {};

class NoiseModel {
public:
    using Kind = std::variant<GaussianConstant, GaussianHetero, BernoulliFromTarget>;

    NoiseModel(Kind kind);  // NOLINT(google-explicit-constructor)

    static NoiseModel gaussian(double sigma) { return NoiseModel(GaussianConstant{sigma}); }
    static NoiseModel hetero(TargetFunction sigma) { return NoiseModel(GaussianHetero{std::move(sigma)}); }
    static NoiseModel bernoulli() { return NoiseModel(BernoulliFromTarget{}); }

    const Kind& kind() const noexcept { return kind_; }
    std::string name() const;
    bool binary() const noexcept { return std::holds_alternative<BernoulliFromTarget>(kind_); }

    /// sigma^2(x) given the target value f(x).
    double variance(std::span<const double> x, double fx) const;
    double sigma(std::span<const double> x, double fx) const;
    /// A label drawn around f(x).
    double draw(Rng& rng, std::span<const double> x, double fx) const;

private:
    Kind kind_;
};

// ---------------------------------------------------------------------------

/// Throws InvalidArgument when target, noise and density disagree on dimension
/// or when Bernoulli labels are requested for a target leaving [0, 1].
void check_compatible(const DensityModel& density, const TargetFunction& target, const NoiseModel& noise);

/// n_plus_1 i.i.d. points from `density`, labelled f(x_i) + noise.
Dataset sample_dataset(const DensityModel& density, const TargetFunction& target, const NoiseModel& noise,
                       std::size_t n_plus_1, Rng& rng);
Dataset sample_dataset(const DensityModel& density, const TargetFunction& target, const NoiseModel& noise,
                       std::size_t n_plus_1, std::uint64_t seed);

/// n_plus_1 i.i.d. points (row-major) without labels.
std::vector<double> sample_points(const DensityModel& density, std::size_t count, Rng& rng);

}  // namespace hilbert
