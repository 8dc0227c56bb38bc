#include "hilbert/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "hilbert/asymptotics.hpp"
#include "hilbert/errors.hpp"
#include "hilbert/estimators.hpp"
#include "hilbert/parallel.hpp"

namespace hilbert {

namespace {

constexpr std::array<std::pair<ExperimentKind, const char*>, 9> kKindNames{{
    {ExperimentKind::demo, "demo"},
    {ExperimentKind::moments, "moments"},
    {ExperimentKind::weight_distribution, "weight_distribution"},
    {ExperimentKind::exceedance, "exceedance"},
    {ExperimentKind::lagrange, "lagrange"},
    {ExperimentKind::variance_bias, "variance_bias"},
    {ExperimentKind::regression_risk, "regression_risk"},
    {ExperimentKind::classification, "classification"},
    {ExperimentKind::extrapolation, "extrapolation"},
}};

// Replicates per task in the chunked histogram reduction. Fixed so the
// partition never depends on the thread count.
constexpr std::size_t kChunk = 256;

using Column = std::vector<double>;
using ReplicateRows = std::vector<std::vector<double>>;

Column column(const ReplicateRows& rows, std::size_t j) {
    Column c(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) c[r] = rows[r][j];
    return c;
}

double power(double w, double beta) {
    if (beta == 2.0) return w * w;
    if (beta == 3.0) return w * w * w;
    if (beta == 0.5) return std::sqrt(w);
    return std::pow(w, beta);
}

MeanEstimate estimate(const ReplicateRows& rows, std::size_t j) {
    const Column c = column(rows, j);
    return mean_estimate(c);
}

double exponent_of(const DensityModel& density) { return static_cast<double>(density.dim()); }

Dataset unlabelled(const DensityModel& density, std::size_t count, Rng& rng) {
    return Dataset(density.dim(), sample_points(density, count, rng), std::vector<double>(count, 0.0));
}

double wn_value(const ScaleWn& s, WnChoice c) {
    switch (c) {
        case WnChoice::exact: return s.exact;
        case WnChoice::first_order: return s.first_order;
        case WnChoice::second_order: return s.second_order;
    }
    return s.exact;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw InvalidArgument(message);
}

void require_points(const std::vector<Point>& pts, std::size_t dim, const char* field) {
    for (const auto& p : pts) {
        require(p.dim() == dim, std::string(field) + ": point dimension does not match the density");
    }
}

bool exterior(const DensityModel& density, const Point& x) {
    return density.classify(x.coords()).location == LocationClass::exterior;
}

Point origin(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

}  // namespace

std::string to_string(ExperimentKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(const std::string& name) {
    for (const auto& [k, n] : kKindNames) {
        if (name == n) return k;
    }
    return std::nullopt;
}

std::string to_string(WnChoice c) {
    switch (c) {
        case WnChoice::exact: return "exact";
        case WnChoice::first_order: return "first_order";
        case WnChoice::second_order: return "second_order";
    }
    return "unknown";
}

std::optional<WnChoice> parse_wn_choice(const std::string& name) {
    if (name == "exact") return WnChoice::exact;
    if (name == "first_order") return WnChoice::first_order;
    if (name == "second_order") return WnChoice::second_order;
    return std::nullopt;
}

std::string to_string(WeightSampling s) {
    return s == WeightSampling::index_zero ? "index_zero" : "all_weights";
}

std::optional<WeightSampling> parse_weight_sampling(const std::string& name) {
    if (name == "index_zero") return WeightSampling::index_zero;
    if (name == "all_weights") return WeightSampling::all_weights;
    return std::nullopt;
}

std::uint64_t cell_tag(ExperimentKind kind, std::uint64_t n) {
    return ((static_cast<std::uint64_t>(kind) + 1) << 56) ^ n;
}

EstimateRecord make_record(ExperimentKind kind, std::uint64_t n, const Point& query, std::string quantity,
                           std::optional<double> parameter, const MeanEstimate& mc, double prediction,
                           std::uint64_t seed) {
    EstimateRecord rec{kind, n, query, std::move(quantity), parameter, mc.mean, mc.std_error, prediction,
                       std::nullopt, mc.count, seed};
    if (prediction != 0.0 && std::isfinite(prediction)) {
        const double ratio = mc.mean / prediction;
        if (std::isfinite(ratio)) rec.ratio = ratio;
    }
    return rec;
}

void validate(const ExperimentSpec& spec) {
    const std::size_t dim = spec.density.dim();
    require(!spec.n_grid.empty(), "n_grid must not be empty");
    for (std::size_t i = 0; i < spec.n_grid.size(); ++i) {
        require(spec.n_grid[i] >= 3, "n_grid values must be >= 3");
        if (i > 0) require(spec.n_grid[i] > spec.n_grid[i - 1], "n_grid must be strictly ascending");
    }
    require(spec.replicates >= 1, "replicates must be >= 1");
    check_compatible(spec.density, spec.target, spec.noise);
    require_points(spec.query_points, dim, "query_points");
    require_points(spec.grid_points, dim, "grid");
    require_points(spec.far_points, dim, "far_points");
    require_points(spec.boundary_points, dim, "boundary_points");

    auto need_queries = [&] { require(!spec.query_points.empty(), "query_points must not be empty"); };
    auto need_positive_density = [&] {
        for (const auto& q : spec.query_points) {
            require(spec.density.pdf(q.coords()) > 0.0, "query_points: this experiment needs rho(x) > 0");
        }
    };

    switch (spec.kind) {
        case ExperimentKind::demo:
            require(!spec.grid_points.empty(), "grid must not be empty");
            break;
        case ExperimentKind::moments:
            need_queries();
            need_positive_density();
            require(!spec.beta_list.empty(), "beta_list must not be empty");
            for (double b : spec.beta_list) {
                require(std::isfinite(b) && b > -1.0 && b != 0.0 && b != 1.0,
                        "beta_list values must lie in (-1,0), (0,1) or (1,inf)");
            }
            break;
        case ExperimentKind::weight_distribution:
            require(spec.n_grid.size() == 1, "weight_distribution takes a single n");
            require(spec.query_points.size() <= 1, "weight_distribution takes at most one query point");
            require(spec.histogram_lo_decade < spec.histogram_hi_decade, "histogram decades must be ascending");
            require(spec.bins_per_decade >= 1, "bins_per_decade must be >= 1");
            require(spec.fit_window_lo > 0.0 && spec.fit_window_lo < spec.fit_window_hi,
                    "fit window must satisfy 0 < lo < hi");
            break;
        case ExperimentKind::exceedance:
            need_queries();
            require(!spec.epsilon_list.empty(), "epsilon_list must not be empty");
            for (double e : spec.epsilon_list) require(e > 0.0 && e < 1.0, "epsilon_list values must lie in (0,1)");
            require(spec.chebyshev_delta >= 0.0, "chebyshev_delta must be >= 0");
            break;
        case ExperimentKind::lagrange:
            require(spec.hold_point.has_value(), "lagrange needs hold_point");
            require(spec.hold_point->dim() == dim, "hold_point: dimension does not match the density");
            require(spec.density.pdf(spec.hold_point->coords()) > 0.0, "hold_point needs rho(x0) > 0");
            require(!spec.grid_points.empty(), "grid must not be empty");
            break;
        case ExperimentKind::variance_bias:
            need_queries();
            break;
        case ExperimentKind::regression_risk:
            need_queries();
            need_positive_density();
            break;
        case ExperimentKind::classification:
            require(spec.noise.binary(), "classification needs Bernoulli labels (noise kind bernoulli)");
            need_queries();
            for (double a : spec.alpha_list) require(a > 0.0 && a <= 1.0, "alpha_list values must lie in (0,1]");
            require(spec.bound_epsilon >= 0.0, "bound_epsilon must be >= 0");
            break;
        case ExperimentKind::extrapolation:
            require(!spec.query_points.empty() || !spec.far_points.empty() || !spec.boundary_points.empty(),
                    "extrapolation needs query_points, far_points or boundary_points");
            for (const auto* pts : {&spec.query_points, &spec.far_points, &spec.boundary_points}) {
                for (const auto& q : *pts) {
                    require(exterior(spec.density, q), "extrapolation points must lie outside the support");
                }
            }
            break;
    }
}

std::vector<EstimateRecord> run_moments(const ExperimentSpec& spec, const ExecutionOptions& exec) {
    validate(spec);
    std::vector<EstimateRecord> out;
    const std::size_t nq = spec.query_points.size();
    std::vector<double> powers{1.0};
    powers.insert(powers.end(), spec.beta_list.begin(), spec.beta_list.end());
    const std::size_t np = powers.size();
    const bool all = spec.weight_sampling == WeightSampling::all_weights;
    for (const std::uint64_t n : spec.n_grid) {
        const std::uint64_t tag = cell_tag(spec.kind, n);
        const ReplicateRows rows = parallel_map(spec.replicates, exec.threads, [&](std::size_t r) {
            Rng rng = Rng::stream(spec.master_seed, tag, r);
            const Dataset data = unlabelled(spec.density, n + 1, rng);
            std::vector<double> w(data.size());
            std::vector<double> row(nq * np);
            for (std::size_t q = 0; q < nq; ++q) {
                hilbert_weights_into(spec.query_points[q].coords(), data, exponent_of(spec.density), w);
                for (std::size_t k = 0; k < np; ++k) {
                    const double beta = powers[k];
                    double value;
                    if (all) {
                        // Exchangeability: the mean of w_i^beta over i has the law-mean of w_0^beta.
                        double sum = 0.0;
                        for (const double wi : w) sum += power(wi, beta);
                        value = sum / static_cast<double>(w.size());
                    } else {
                        value = power(w[0], beta);
                    }
                    row[q * np + k] = value;
                }
            }
            return row;
        });
        for (std::size_t q = 0; q < nq; ++q) {
            const Point& x = spec.query_points[q];
            for (std::size_t k = 0; k < np; ++k) {
                out.push_back(make_record(spec.kind, n, x, "moment", powers[k], estimate(rows, q * np + k),
                                          predict_moment(powers[k], n, x, spec.density).value, spec.master_seed));
            }
        }
    }
    return out;
}

WeightDistributionResult run_weight_distribution(const ExperimentSpec& spec, const ExecutionOptions& exec) {
    validate(spec);
    const std::uint64_t n = spec.n_grid.front();
    const std::size_t dim = spec.density.dim();
    const Point query = spec.query_points.empty() ? origin(dim) : spec.query_points.front();
    const ScaleWn scale = solve_wn(n);
    const double wn = wn_value(scale, spec.wn_choice);
    const bool all = spec.weight_sampling == WeightSampling::all_weights;
    // For the heavy-tailed radial density around the origin only |x_j|^d
    // matters, and it is a / (1 - a) with a uniform; the inverse is drawn directly.
    const bool radial_fast = std::holds_alternative<RadialHeavyTail>(spec.density.kind()) && query == origin(dim);
    const std::uint64_t tag = cell_tag(spec.kind, n);

    struct Chunk {
        LogHistogram histogram;
        std::vector<double> scaled_w0;
    };
    const std::size_t chunks = (spec.replicates + kChunk - 1) / kChunk;
    auto parts = parallel_map(chunks, exec.threads, [&](std::size_t c) -> std::optional<Chunk> {
        Chunk chunk{LogHistogram(spec.histogram_lo_decade, spec.histogram_hi_decade, spec.bins_per_decade), {}};
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(spec.replicates, begin + kChunk);
        std::vector<double> weights(n + 1);
        for (std::size_t r = begin; r < end; ++r) {
            Rng rng = Rng::stream(spec.master_seed, tag, r);
            if (radial_fast) {
                double total = 0.0;
                for (auto& v : weights) {
                    const double a = rng.uniform_open();
                    v = (1.0 - a) / a;
                    total += v;
                }
                for (auto& v : weights) v /= total;
            } else {
                const Dataset data = unlabelled(spec.density, n + 1, rng);
                hilbert_weights_into(query.coords(), data, exponent_of(spec.density), weights);
            }
            if (all) {
                for (double w : weights) chunk.histogram.add(w / wn);
            } else {
                chunk.histogram.add(weights[0] / wn);
                chunk.scaled_w0.push_back(weights[0] / wn);
            }
        }
        return chunk;
    });

    LogHistogram histogram(spec.histogram_lo_decade, spec.histogram_hi_decade, spec.bins_per_decade);
    std::vector<double> scaled;
    for (auto& p : parts) {
        histogram.merge(p->histogram);
        scaled.insert(scaled.end(), p->scaled_w0.begin(), p->scaled_w0.end());
    }

    SlopeFit fit{};
    try {
        fit = fit_loglog_slope(histogram, spec.fit_window_lo, spec.fit_window_hi);
    } catch (const InvalidArgument&) {
        throw InvalidArgument("too little mass in the fit window [" + std::to_string(spec.fit_window_lo) + ", " +
                              std::to_string(spec.fit_window_hi) + "]; raise replicates");
    }

    double sup_distance = 0.0;
    if (all) {
        for (std::size_t i = 0; i < histogram.bins(); ++i) {
            const double edge = histogram.lower_edge(i);
            sup_distance = std::max(sup_distance, std::abs(histogram.cdf_at_lower_edge(i) - scaling_cdf(edge)));
        }
    } else {
        std::sort(scaled.begin(), scaled.end());
        sup_distance = ks_distance(scaled, scaling_cdf);
    }

    const std::size_t used = spec.replicates;
    WeightDistributionResult result{std::move(histogram), {}, wn, n};
    result.records.push_back(make_record(spec.kind, n, query, "tail_slope", std::nullopt,
                                         MeanEstimate{fit.slope, fit.std_error, used}, -2.0, spec.master_seed));
    result.records.push_back(make_record(spec.kind, n, query, "cdf_sup_distance", std::nullopt,
                                         MeanEstimate{sup_distance, 0.0, used}, 0.0, spec.master_seed));
    result.records.push_back(make_record(spec.kind, n, query, "histogram_mass", std::nullopt,
                                         MeanEstimate{result.histogram.total(), 0.0, used},
                                         static_cast<double>(all ? used * (n + 1) : used), spec.master_seed));
    return result;
}

std::vector<EstimateRecord> run_exceedance(const ExperimentSpec& spec, const ExecutionOptions& exec) {
    validate(spec);
    std::vector<EstimateRecord> out;
    const std::size_t nq = spec.query_points.size();
    for (const std::uint64_t n : spec.n_grid) {
        const std::uint64_t tag = cell_tag(spec.kind, n);
        const ReplicateRows w0 = parallel_map(spec.replicates, exec.threads, [&](std::size_t r) {
            Rng rng = Rng::stream(spec.master_seed, tag, r);
            const Dataset data = unlabelled(spec.density, n + 1, rng);
            std::vector<double> buffer(data.size());
            std::vector<double> row(nq);
            for (std::size_t q = 0; q < nq; ++q) {
                hilbert_weights_into(spec.query_points[q].coords(), data, exponent_of(spec.density), buffer);
                row[q] = buffer[0];
            }
            return row;
        });
        for (std::size_t q = 0; q < nq; ++q) {
            const Column col = column(w0, q);
            for (const double eps : spec.epsilon_list) {
                Column hits(col.size());
                std::transform(col.begin(), col.end(), hits.begin(), [eps](double w) { return w > eps ? 1.0 : 0.0; });
                const MeanEstimate freq = mean_estimate(hits);
                const auto pred = predict_exceedance(eps, n, spec.chebyshev_delta);
                const Point& x = spec.query_points[q];
                out.push_back(make_record(spec.kind, n, x, "exceedance_heuristic", eps, freq, pred.heuristic,
                                          spec.master_seed));
                out.push_back(make_record(spec.kind, n, x, "exceedance_chebyshev", eps, freq, pred.chebyshev,
                                          spec.master_seed));
                out.push_back(make_record(spec.kind, n, x, "exceedance_markov", eps, freq, pred.markov,
                                          spec.master_seed));
            }
        }
    }
    return out;
}

std::vector<EstimateRecord> run_lagrange(const ExperimentSpec& spec, const ExecutionOptions& exec) {
    validate(spec);
    const Point& x0 = *spec.hold_point;
    const std::size_t dim = spec.density.dim();
    const std::size_t ng = spec.grid_points.size();
    const double mass = local_mass_scale(x0, spec.density);
    std::vector<EstimateRecord> out;
    for (const std::uint64_t n : spec.n_grid) {
        const std::uint64_t tag = cell_tag(spec.kind, n);
        const ReplicateRows values = parallel_map(spec.replicates, exec.threads, [&](std::size_t r) {
            Rng rng = Rng::stream(spec.master_seed, tag, r);
            std::vector<double> coords(x0.coords().begin(), x0.coords().end());
            const auto others = sample_points(spec.density, n, rng);
            coords.insert(coords.end(), others.begin(), others.end());
            const Dataset data(dim, std::move(coords), std::vector<double>(n + 1, 0.0));
            std::vector<double> buffer(data.size());
            std::vector<double> row(ng);
            for (std::size_t g = 0; g < ng; ++g) {
                hilbert_weights_into(spec.grid_points[g].coords(), data, exponent_of(spec.density), buffer);
                row[g] = buffer[0];
            }
            return row;
        });
        const double wn = wn_value(solve_wn(n), spec.wn_choice);
        for (std::size_t g = 0; g < ng; ++g) {
            const Point& x = spec.grid_points[g];
            const double r = euclidean_distance(x.coords(), x0.coords());
            const double z = mass * std::pow(r, static_cast<double>(dim)) / wn;
            out.push_back(make_record(spec.kind, n, x, "lagrange", std::nullopt, estimate(values, g),
                                      lagrange_prediction(z), spec.master_seed));
        }
    }
    return out;
}

std::vector<EstimateRecord> run_variance_bias(const ExperimentSpec& spec, const ExecutionOptions& exec) {
    validate(spec);
    const std::size_t nq = spec.query_points.size();
    std::vector<double> fq(nq);
    for (std::size_t q = 0; q < nq; ++q) fq[q] = spec.target(spec.query_points[q]);

    // Per query: V-hat, mean shift, B-hat.
    constexpr std::size_t kCols = 3;
    std::vector<EstimateRecord> out;
    for (const std::uint64_t n : spec.n_grid) {
        const std::uint64_t tag = cell_tag(spec.kind, n);
        const ReplicateRows rows = parallel_map(spec.replicates, exec.threads, [&](std::size_t r) {
            Rng rng = Rng::stream(spec.master_seed, tag, r);
            const Dataset data = unlabelled(spec.density, n + 1, rng);
            std::vector<double> f(data.size());
            std::vector<double> var(data.size());
            for (std::size_t i = 0; i < data.size(); ++i) {
                f[i] = spec.target(data.point(i));
                var[i] = spec.noise.variance(data.point(i), f[i]);
            }
            std::vector<double> w(data.size());
            std::vector<double> row(kCols * nq);
            for (std::size_t q = 0; q < nq; ++q) {
                hilbert_weights_into(spec.query_points[q].coords(), data, exponent_of(spec.density), w);
                double v = 0.0;
                for (std::size_t i = 0; i < w.size(); ++i) v += w[i] * w[i] * var[i];
                const double shift = weighted_label_sum(w, f) - fq[q];
                row[kCols * q] = v;
                row[kCols * q + 1] = shift;
                row[kCols * q + 2] = shift * shift;
            }
            return row;
        });
        for (std::size_t q = 0; q < nq; ++q) {
            const Point& x = spec.query_points[q];
            const auto s = [&](std::size_t k) { return estimate(rows, kCols * q + k); };
            if (spec.density.pdf(x.coords()) > 0.0) {
                const double pv = predict_variance(x, n, spec.noise, spec.density, spec.target).value;
                const BiasPrediction pb = predict_bias(x, n, spec.density, spec.target);
                out.push_back(make_record(spec.kind, n, x, "variance", std::nullopt, s(0), pv, spec.master_seed));
                out.push_back(make_record(spec.kind, n, x, "mean_shift", std::nullopt, s(1), pb.mean_shift.value,
                                          spec.master_seed));
                out.push_back(make_record(spec.kind, n, x, "squared_bias", std::nullopt, s(2),
                                          pb.squared_bias.value, spec.master_seed));
            } else {
                const double limit = rho_zero_limit(x, spec.density, spec.target);
                out.push_back(make_record(spec.kind, n, x, "mean_shift", std::nullopt, s(1), limit, spec.master_seed));
                out.push_back(
                    make_record(spec.kind, n, x, "squared_bias", std::nullopt, s(2), limit * limit, spec.master_seed));
            }
        }
    }
    return out;
}

std::vector<EstimateRecord> run_regression_risk(const ExperimentSpec& spec, const ExecutionOptions& exec) {
    validate(spec);
    const std::size_t nq = spec.query_points.size();
    std::vector<double> fq(nq);
    for (std::size_t q = 0; q < nq; ++q) fq[q] = spec.target(spec.query_points[q]);

    std::vector<EstimateRecord> out;
    std::vector<std::vector<MeanEstimate>> risks(nq);
    for (const std::uint64_t n : spec.n_grid) {
        const std::uint64_t tag = cell_tag(spec.kind, n);
        const ReplicateRows rows = parallel_map(spec.replicates, exec.threads, [&](std::size_t r) {
            Rng rng = Rng::stream(spec.master_seed, tag, r);
            const Dataset data = sample_dataset(spec.density, spec.target, spec.noise, n + 1, rng);
            std::vector<double> w(data.size());
            std::vector<double> row(nq);
            for (std::size_t q = 0; q < nq; ++q) {
                hilbert_weights_into(spec.query_points[q].coords(), data, exponent_of(spec.density), w);
                const double err = weighted_label_sum(w, data.labels()) - fq[q];
                row[q] = err * err;
            }
            return row;
        });
        for (std::size_t q = 0; q < nq; ++q) {
            const Point& x = spec.query_points[q];
            const MeanEstimate risk = estimate(rows, q);
            risks[q].push_back(risk);
            out.push_back(make_record(spec.kind, n, x, "risk", std::nullopt, risk,
                                      predict_regression_risk(x, n, spec.density, spec.target, spec.noise).value,
                                      spec.master_seed));
        }
    }

    if (spec.n_grid.size() < 2) return out;
    for (std::size_t q = 0; q < nq; ++q) {
        const Point& x = spec.query_points[q];
        const bool usable = std::all_of(risks[q].begin(), risks[q].end(), [](const MeanEstimate& m) { return m.mean > 0.0; });
        if (!usable) continue;
        std::vector<double> ln_n;
        std::vector<double> inv;
        for (std::size_t k = 0; k < spec.n_grid.size(); ++k) {
            ln_n.push_back(std::log(static_cast<double>(spec.n_grid[k])));
            inv.push_back(1.0 / risks[q][k].mean);
        }
        const LinearFit fit = least_squares(ln_n, inv);
        // Delta method: the slope is linear in the 1/risk values.
        double mean_ln = 0.0;
        for (double v : ln_n) mean_ln += v;
        mean_ln /= static_cast<double>(ln_n.size());
        double sxx = 0.0;
        for (double v : ln_n) sxx += (v - mean_ln) * (v - mean_ln);
        double var = 0.0;
        for (std::size_t k = 0; k < ln_n.size(); ++k) {
            const double c = (ln_n[k] - mean_ln) / sxx;
            const double se = risks[q][k].std_error / (risks[q][k].mean * risks[q][k].mean);
            var += c * c * se * se;
        }
        const double sigma2 = spec.noise.variance(x.coords(), fq[q]);
        out.push_back(make_record(spec.kind, 0, x, "inverse_risk_slope", std::nullopt,
                                  MeanEstimate{fit.slope, std::sqrt(var), spec.replicates}, 1.0 / sigma2,
                                  spec.master_seed));
    }
    return out;
}

std::vector<EstimateRecord> run_classification(const ExperimentSpec& spec, const ExecutionOptions& exec) {
    validate(spec);
    const std::size_t nq = spec.query_points.size();
    std::vector<double> fq(nq);
    std::vector<int> bayes(nq);
    for (std::size_t q = 0; q < nq; ++q) {
        fq[q] = spec.target(spec.query_points[q]);
        bayes[q] = plugin_class(fq[q]);
    }

    std::vector<EstimateRecord> out;
    for (const std::uint64_t n : spec.n_grid) {
        const std::uint64_t tag = cell_tag(spec.kind, n);
        // Per query: |2f - 1| 1[plugin != Bayes], and the naive excess loss
        // 1[plugin != Y] - P[Bayes != Y] with a fresh label Y.
        const ReplicateRows rows = parallel_map(spec.replicates, exec.threads, [&](std::size_t r) {
            Rng rng = Rng::stream(spec.master_seed, tag, r);
            const Dataset data = sample_dataset(spec.density, spec.target, spec.noise, n + 1, rng);
            std::vector<double> w(data.size());
            std::vector<double> row(2 * nq);
            for (std::size_t q = 0; q < nq; ++q) {
                hilbert_weights_into(spec.query_points[q].coords(), data, exponent_of(spec.density), w);
                const int guess = plugin_class(weighted_label_sum(w, data.labels()));
                const int fresh = rng.bernoulli(fq[q]) ? 1 : 0;
                const double bayes_risk = bayes[q] == 1 ? 1.0 - fq[q] : fq[q];
                row[2 * q] = guess != bayes[q] ? std::abs(2.0 * fq[q] - 1.0) : 0.0;
                row[2 * q + 1] = (guess != fresh ? 1.0 : 0.0) - bayes_risk;
            }
            return row;
        });
        for (std::size_t q = 0; q < nq; ++q) {
            const Point& x = spec.query_points[q];
            const MeanEstimate identity = estimate(rows, 2 * q);
            const MeanEstimate naive = estimate(rows, 2 * q + 1);
            for (const double alpha : spec.alpha_list) {
                const double bound =
                    predict_classification_bound(x, n, alpha, spec.target, spec.noise, spec.bound_epsilon).value;
                out.push_back(make_record(spec.kind, n, x, "excess_risk_identity", alpha, identity, bound,
                                          spec.master_seed));
                out.push_back(
                    make_record(spec.kind, n, x, "excess_risk_naive", alpha, naive, bound, spec.master_seed));
            }
        }
    }
    return out;
}

std::vector<EstimateRecord> run_extrapolation(const ExperimentSpec& spec, const ExecutionOptions& exec) {
    validate(spec);
    struct Probe {
        const Point* x;
        const char* quantity;
        double prediction;
    };
    std::vector<Probe> probes;
    for (const auto& x : spec.query_points) {
        probes.push_back({&x, "extrapolation", extrapolation_limit(x, spec.density, spec.target)});
    }
    if (!spec.far_points.empty()) {
        const double mean = rho_mean(spec.density, spec.target);
        for (const auto& x : spec.far_points) probes.push_back({&x, "far_field", mean});
    }
    for (const auto& x : spec.boundary_points) {
        probes.push_back({&x, "boundary_approach", spec.target(spec.density.project_to_support(x.coords()))});
    }

    std::vector<EstimateRecord> out;
    for (const std::uint64_t n : spec.n_grid) {
        const std::uint64_t tag = cell_tag(spec.kind, n);
        const ReplicateRows rows = parallel_map(spec.replicates, exec.threads, [&](std::size_t r) {
            Rng rng = Rng::stream(spec.master_seed, tag, r);
            const Dataset points = unlabelled(spec.density, n + 1, rng);
            std::vector<double> f(points.size());
            for (std::size_t i = 0; i < f.size(); ++i) f[i] = spec.target(points.point(i));
            std::vector<double> w(points.size());
            std::vector<double> row(probes.size());
            for (std::size_t p = 0; p < probes.size(); ++p) {
                hilbert_weights_into(probes[p].x->coords(), points, exponent_of(spec.density), w);
                row[p] = weighted_label_sum(w, f);
            }
            return row;
        });
        for (std::size_t p = 0; p < probes.size(); ++p) {
            out.push_back(make_record(spec.kind, n, *probes[p].x, probes[p].quantity, std::nullopt, estimate(rows, p),
                                      probes[p].prediction, spec.master_seed));
        }
    }
    return out;
}

std::vector<DemoRow> run_demo(const ExperimentSpec& spec) {
    validate(spec);
    require(spec.density.dim() == 1, "demo is one-dimensional");
    const std::uint64_t n = spec.n_grid.front();
    Rng rng = Rng::stream(spec.master_seed, cell_tag(spec.kind, n), 0);
    const Dataset data = sample_dataset(spec.density, spec.target, spec.noise, n + 1, rng);
    std::vector<double> w(data.size());
    std::vector<DemoRow> rows;
    rows.reserve(spec.grid_points.size() + data.size());
    for (const auto& x : spec.grid_points) {
        hilbert_weights_into(x.coords(), data, 1.0, w);
        rows.push_back({x[0], weighted_label_sum(w, data.labels()), spec.target(x), false});
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto xi = data.point(i);
        hilbert_weights_into(xi, data, 1.0, w);
        rows.push_back({xi[0], weighted_label_sum(w, data.labels()), spec.target(xi), true});
    }
    return rows;
}

}  // namespace hilbert
