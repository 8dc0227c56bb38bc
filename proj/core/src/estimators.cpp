#include "hilbert/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hilbert/errors.hpp"

namespace hilbert {

namespace {

Prediction from_weights(WeightVector w, const Dataset& data, bool keep) {
    Prediction p{weighted_label_sum(w.weights, data.labels()), std::nullopt, {}};
    if (keep) p.weights_used = std::move(w);
    return p;
}

}  // namespace

double weighted_label_sum(std::span<const double> weights, std::span<const double> labels) {
    double acc = 0.0;
    double lo = labels.front();
    double hi = labels.front();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i] * labels[i];
        lo = std::min(lo, labels[i]);
        hi = std::max(hi, labels[i]);
    }
    return std::clamp(acc, lo, hi);
}

Prediction hilbert_regress(const Point& query, const Dataset& data, bool keep_weights) {
    return from_weights(hilbert_weights(query, data), data, keep_weights);
}

Prediction shepard_regress(const Point& query, const Dataset& data, double exponent, bool keep_weights) {
    if (!(exponent > 0.0)) throw InvalidArgument("Shepard exponent must be positive");
    return from_weights(hilbert_weights(query, data, exponent), data, keep_weights);
}

Prediction winn_regress(const Point& query, const Dataset& data, std::size_t k, double delta,
                        bool keep_weights) {
    if (k < 1 || k > data.size()) {
        throw InvalidArgument("wiNN k must lie in [1, n+1], got " + std::to_string(k));
    }
    if (!(delta > 0.0)) throw InvalidArgument("wiNN delta must be positive");
    if (query.dim() != data.dim()) throw InvalidArgument("query dimension does not match dataset");

    std::vector<std::pair<double, std::size_t>> order(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        order[i] = {euclidean_distance(query.coords(), data.point(i)), i};
    }
    // Lexicographic comparison breaks distance ties by the lower index.
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1), order.end());
    std::vector<std::size_t> nearest(k);
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t j = 0; j < k; ++j) nearest[j] = order[j].second;

    std::vector<double> sub(k);
    const auto hit = subset_weights_into(query.coords(), data, nearest, delta, sub);

    WeightVector w{std::vector<double>(data.size(), 0.0), query, std::nullopt};
    for (std::size_t j = 0; j < k; ++j) w.weights[nearest[j]] = sub[j];
    if (hit) w.exact_hit = nearest[*hit];
    Prediction p = from_weights(std::move(w), data, keep_weights);
    if (delta >= 0.5 * static_cast<double>(data.dim())) {
        p.note = "delta >= d/2: outside the wiNN consistency regime";
    }
    return p;
}

int plugin_classify(const Point& query, const Dataset& data) {
    for (double y : data.labels()) {
        if (y != 0.0 && y != 1.0) throw InvalidArgument("plugin classifier requires labels in {0, 1}");
    }
    return plugin_class(hilbert_regress(query, data).value);
}

Prediction predict(const Point& query, const Dataset& data, const EstimatorKind& kind) {
    struct Visitor {
        const Point& q;
        const Dataset& d;
        Prediction operator()(const HilbertKind&) const { return hilbert_regress(q, d); }
        Prediction operator()(const ShepardKind& s) const { return shepard_regress(q, d, s.exponent); }
        Prediction operator()(const WinnKind& w) const { return winn_regress(q, d, w.k, w.delta); }
    };
    return std::visit(Visitor{query, data}, kind);
}

std::vector<Prediction> evaluate_on_grid(const std::vector<Point>& grid, const Dataset& data,
                                         const EstimatorKind& kind) {
    if (grid.empty()) throw InvalidArgument("evaluation grid is empty");
    std::vector<Prediction> out;
    out.reserve(grid.size());
    for (const auto& x : grid) out.push_back(predict(x, data, kind));
    return out;
}

}  // namespace hilbert
