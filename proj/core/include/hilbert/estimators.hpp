#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hilbert/geometry.hpp"

namespace hilbert {

struct HilbertKind {};

struct ShepardKind {
    double exponent;
};

/// Weighted interpolating nearest neighbours: kernel |x - x_(i)|^-delta over
/// the k nearest samples only.
struct WinnKind {
    std::size_t k;
    double delta;
};

using EstimatorKind = std::variant<HilbertKind, ShepardKind, WinnKind>;

struct Prediction {
    double value;
    std::optional<WeightVector> weights_used;
    /// Non-empty when the estimator ran outside its consistency regime
    /// (wiNN with delta >= d/2).
    std::string note;
};

Prediction hilbert_regress(const Point& query, const Dataset& data, bool keep_weights = false);

Prediction shepard_regress(const Point& query, const Dataset& data, double exponent,
                           bool keep_weights = false);

/// Neighbour ties at the k-th distance keep the lowest index.
Prediction winn_regress(const Point& query, const Dataset& data, std::size_t k, double delta,
                        bool keep_weights = false);

/// theta(fhat - 1/2) with theta(0) = 1. Labels must be 0 or 1.
int plugin_classify(const Point& query, const Dataset& data);

/// Class from an already computed regression value, same tie convention.
inline int plugin_class(double fhat) noexcept { return fhat >= 0.5 ? 1 : 0; }

Prediction predict(const Point& query, const Dataset& data, const EstimatorKind& kind);

/// Elementwise, order-preserving evaluation over a grid.
std::vector<Prediction> evaluate_on_grid(const std::vector<Point>& grid, const Dataset& data,
                                         const EstimatorKind& kind);

/// Convex combination sum_i w_i y_i, clamped to [min y, max y] against rounding.
double weighted_label_sum(std::span<const double> weights, std::span<const double> labels);

}  // namespace hilbert
