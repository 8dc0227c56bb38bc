#include "hilbert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hilbert/errors.hpp"

namespace hilbert {

namespace {

// Squared distances inside this band can be ratioed directly without
// losing the distance to underflow or overflow.
constexpr double kSafeLow = 1e-290;
constexpr double kSafeHigh = 1e290;
const double kLogExactHit = std::log(kExactHitTolerance);

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
}

double squared_distance(std::span<const double> a, const double* b) noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a[k] - b[k];
        s += t * t;
    }
    return s;
}

// ln|a - b| with a per-call scale so tiny and huge separations survive.
double log_distance(std::span<const double> a, const double* b) noexcept {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    if (m == 0.0) return -std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = (a[k] - b[k]) / m;
        s += t * t;
    }
    return std::log(m) + 0.5 * std::log(s);
}

// r^(exponent/2) for a squared-distance ratio r in (0, 1].
inline double pow_half(double r, double exponent) noexcept {
    if (exponent == 2.0) return r;
    if (exponent == 1.0) return std::sqrt(r);
    if (exponent == 4.0) return r * r;
    if (exponent == 3.0) return r * std::sqrt(r);
    return std::pow(r, 0.5 * exponent);
}

void check_query(std::span<const double> query, const Dataset& data) {
    if (query.size() != data.dim()) {
        throw InvalidArgument("query dimension " + std::to_string(query.size()) +
                              " does not match dataset dimension " + std::to_string(data.dim()));
    }
    if (!all_finite(query)) throw InvalidArgument("query has a non-finite coordinate");
}

void check_exponent(double exponent) {
    if (!(exponent > 0.0) || !std::isfinite(exponent)) {
        throw InvalidArgument("kernel exponent must be positive and finite");
    }
}

// Softmax of -exponent * ln(dist) over the rows row(0..count-1).
template <class RowOf>
std::optional<std::size_t> weights_impl(std::span<const double> query, const Dataset& data,
                                        std::size_t count, RowOf row, double exponent,
                                        std::span<double> out) {
    if (count == 0) throw InvalidArgument("dataset is empty");
    if (out.size() != count) throw InvalidArgument("output span has the wrong length");

    const double* base = data.coords().data();
    const std::size_t d = data.dim();

    double qmin = std::numeric_limits<double>::infinity();
    bool safe = true;
    for (std::size_t k = 0; k < count; ++k) {
        const double q = squared_distance(query, base + row(k) * d);
        out[k] = q;
        if (!(q >= kSafeLow && q <= kSafeHigh)) safe = false;
        if (q < qmin) qmin = q;
    }

    if (safe) {
        // exp(s_k - s_max) == (dist_min / dist_k)^exponent
        double sum = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            out[k] = pow_half(qmin / out[k], exponent);
            sum += out[k];
        }
        const double inv = 1.0 / sum;
        for (auto& w : out) w *= inv;
        return std::nullopt;
    }

    double lmin = std::numeric_limits<double>::infinity();
    std::size_t imin = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const double l = log_distance(query, base + row(k) * d);
        out[k] = l;
        if (l < lmin) {
            lmin = l;
            imin = k;
        }
    }
    if (lmin <= kLogExactHit) {
        std::fill(out.begin(), out.end(), 0.0);
        out[imin] = 1.0;
        return imin;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = std::exp(-exponent * (out[k] - lmin));
        sum += out[k];
    }
    const double inv = 1.0 / sum;
    for (auto& w : out) w *= inv;
    return std::nullopt;
}

}  // namespace

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point::Point(std::span<const double> coords) : Point(std::vector<double>(coords.begin(), coords.end())) {}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw InvalidArgument("point must have dimension >= 1");
    if (!all_finite(coords_)) throw InvalidArgument("point has a non-finite coordinate");
}

Dataset::Dataset(std::size_t dim, std::vector<double> coords, std::vector<double> labels)
    : dim_(dim), coords_(std::move(coords)), labels_(std::move(labels)) {
    if (dim_ == 0) throw InvalidArgument("dataset dimension must be >= 1");
    if (labels_.empty()) throw InvalidArgument("dataset must hold at least one point");
    if (coords_.size() != dim_ * labels_.size()) {
        throw InvalidArgument("coordinate buffer length does not equal dim * number of labels");
    }
    if (!all_finite(coords_)) throw InvalidArgument("dataset has a non-finite coordinate");
    if (!all_finite(labels_)) throw InvalidArgument("dataset has a non-finite label");
}

Dataset::Dataset(const std::vector<Point>& points, std::vector<double> labels)
    : Dataset(points.empty() ? 1 : points.front().dim(),
              [&] {
                  if (points.empty()) throw InvalidArgument("dataset must hold at least one point");
                  std::vector<double> flat;
                  flat.reserve(points.size() * points.front().dim());
                  for (const auto& p : points) {
                      if (p.dim() != points.front().dim()) {
                          throw InvalidArgument("all dataset points must share one dimension");
                      }
                      flat.insert(flat.end(), p.coords().begin(), p.coords().end());
                  }
                  return flat;
              }(),
              std::move(labels)) {}

Dataset Dataset::with_labels(std::vector<double> labels) const {
    if (labels.size() != labels_.size()) throw InvalidArgument("label count must not change");
    return Dataset(dim_, coords_, std::move(labels));
}

std::optional<std::size_t> hilbert_weights_into(std::span<const double> query, const Dataset& data,
                                                double exponent, std::span<double> out) {
    check_query(query, data);
    check_exponent(exponent);
    return weights_impl(query, data, data.size(), [](std::size_t k) { return k; }, exponent, out);
}

std::optional<std::size_t> subset_weights_into(std::span<const double> query, const Dataset& data,
                                               std::span<const std::size_t> indices,
                                               double exponent, std::span<double> out) {
    check_query(query, data);
    check_exponent(exponent);
    for (auto i : indices) {
        if (i >= data.size()) throw InvalidArgument("subset index out of range");
    }
    auto sub = weights_impl(query, data, indices.size(), [&](std::size_t k) { return indices[k]; },
                            exponent, out);
    return sub;
}

WeightVector hilbert_weights(const Point& query, const Dataset& data, std::optional<double> exponent) {
    WeightVector result{std::vector<double>(data.size()), query, std::nullopt};
    const double p = exponent.value_or(static_cast<double>(data.dim()));
    result.exact_hit = hilbert_weights_into(query.coords(), data, p, result.weights);
    return result;
}

double lagrange_value(const Point& query, std::size_t hold_index, const Dataset& data) {
    if (hold_index >= data.size()) {
        throw InvalidArgument("hold index " + std::to_string(hold_index) + " out of range");
    }
    return hilbert_weights(query, data).weights[hold_index];
}

NearestPoint pairwise_min_distance(const Point& query, const Dataset& data) {
    check_query(query.coords(), data);
    std::size_t best = 0;
    double qbest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double q = squared_distance(query.coords(), data.point(i).data());
        if (q < qbest) {
            qbest = q;
            best = i;
        }
    }
    if (!(qbest >= kSafeLow && qbest <= kSafeHigh)) {
        // Squared distances lost range; redo the search on log distances.
        double lbest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < data.size(); ++i) {
            const double l = log_distance(query.coords(), data.point(i).data());
            if (l < lbest) {
                lbest = l;
                best = i;
            }
        }
    }
    return {best, euclidean_distance(query.coords(), data.point(best))};
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
    const double q = squared_distance(a, b.data());
    if (q >= kSafeLow && q <= kSafeHigh) return std::sqrt(q);
    return std::exp(log_distance(a, b.data()));
}

}  // namespace hilbert
