#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace hilbert {

/// A point in R^d. Coordinates are finite and d >= 1.
class Point {
public:
    Point(std::initializer_list<double> coords);
    explicit Point(std::vector<double> coords);
    explicit Point(std::span<const double> coords);

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

/// (n+1) labelled points in R^d, stored row-major in one contiguous buffer.
/// Immutable after construction.
class Dataset {
public:
    Dataset(std::size_t dim, std::vector<double> coords, std::vector<double> labels);
    Dataset(const std::vector<Point>& points, std::vector<double> labels);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return labels_.size(); }
    std::span<const double> point(std::size_t i) const noexcept {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<const double> coords() const noexcept { return coords_; }
    std::span<const double> labels() const noexcept { return labels_; }
    double label(std::size_t i) const noexcept { return labels_[i]; }

    /// Copy with the labels replaced; the points are shared by value.
    Dataset with_labels(std::vector<double> labels) const;

private:
    std::size_t dim_;
    std::vector<double> coords_;
    std::vector<double> labels_;
};

/// Hilbert (or Shepard) weights at a query point.
struct WeightVector {
    std::vector<double> weights;
    Point query;
    std::optional<std::size_t> exact_hit;
};

/// Distances at or below this are treated as coincidence with a data point.
inline constexpr double kExactHitTolerance = 1e-300;

/// Normalized inverse-power weights |x - x_i|^-exponent / sum_j |x - x_j|^-exponent.
/// Without an exponent the dimension d is used (the Hilbert kernel).
///
/// The weights are formed as a softmax of s_i = -exponent * ln|x - x_i| with the
/// maximum subtracted, so distance ratios spanning hundreds of orders of
/// magnitude neither overflow nor underflow. A distance <= kExactHitTolerance
/// returns the indicator vector on the nearest such index (lowest index on ties).
WeightVector hilbert_weights(const Point& query, const Dataset& data,
                             std::optional<double> exponent = std::nullopt);

/// Allocation-free form of hilbert_weights writing into `out` (size data.size()).
/// Returns the exact-hit index, if any.
std::optional<std::size_t> hilbert_weights_into(std::span<const double> query, const Dataset& data,
                                                double exponent, std::span<double> out);

/// Same as hilbert_weights_into over a subset of dataset rows given by `indices`;
/// `out[k]` is the weight of row `indices[k]`.
std::optional<std::size_t> subset_weights_into(std::span<const double> query, const Dataset& data,
                                               std::span<const std::size_t> indices,
                                               double exponent, std::span<double> out);

/// w_{hold_index}(query): the Lagrange function of one sample.
double lagrange_value(const Point& query, std::size_t hold_index, const Dataset& data);

struct NearestPoint {
    std::size_t index;
    double distance;
};

/// Euclidean nearest data point; ties go to the lowest index.
NearestPoint pairwise_min_distance(const Point& query, const Dataset& data);

/// Euclidean distance that stays accurate when |a - b| underflows or overflows
/// when squared.
double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace hilbert
