#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hilbert/densities.hpp"
#include "hilbert/geometry.hpp"
#include "hilbert/stats.hpp"

namespace hilbert {

enum class ExperimentKind {
    demo,
    moments,
    weight_distribution,
    exceedance,
    lagrange,
    variance_bias,
    regression_risk,
    classification,
    extrapolation,
};

std::string to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(const std::string& name);

/// Which W_n normalizes the scaling variable (or the Lagrange Z).
enum class WnChoice { exact, first_order, second_order };
std::string to_string(WnChoice c);
std::optional<WnChoice> parse_wn_choice(const std::string& name);

/// Histogram one weight per replicate (w_0) or all n+1 weights. The latter
/// are correlated within a replicate.
enum class WeightSampling { index_zero, all_weights };
std::string to_string(WeightSampling s);
std::optional<WeightSampling> parse_weight_sampling(const std::string& name);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::moments;
    DensityModel density = DensityModel::unit_cube(1);
    TargetFunction target = TargetFunction::constant(0.0);
    NoiseModel noise = NoiseModel::gaussian(0.1);
    /// Values of n; each dataset holds n + 1 points.
    std::vector<std::uint64_t> n_grid{1000};
    std::size_t replicates = 1000;
    std::vector<Point> query_points;
    std::vector<double> beta_list;
    std::vector<double> epsilon_list;
    std::vector<double> alpha_list{1.0, 0.5};
    /// Lagrange: the held sample x_0.
    std::optional<Point> hold_point;
    /// Lagrange and demo evaluation grid.
    std::vector<Point> grid_points;
    /// Extrapolation sweeps: far-field points (compared with the rho-mean of f)
    /// and points approaching the support (compared with f at the nearest
    /// support point).
    std::vector<Point> far_points;
    std::vector<Point> boundary_points;
    WnChoice wn_choice = WnChoice::second_order;
    WeightSampling weight_sampling = WeightSampling::index_zero;
    int histogram_lo_decade = -4;
    int histogram_hi_decade = 6;
    int bins_per_decade = 10;
    double fit_window_lo = 10.0;
    double fit_window_hi = 1000.0;
    double chebyshev_delta = 0.0;
    double bound_epsilon = 0.0;
    std::uint64_t master_seed = 20240101;
};

/// Checks the spec invariants for its kind; throws InvalidArgument naming the
/// offending field.
void validate(const ExperimentSpec& spec);

struct EstimateRecord {
    ExperimentKind kind;
    std::uint64_t n;
    Point query;
    std::string quantity;
    /// beta, epsilon or alpha when the quantity is parameterized.
    std::optional<double> parameter;
    double mc_mean;
    double mc_stderr;
    double prediction;
    /// mc_mean / prediction; absent when the prediction is 0 or not finite.
    std::optional<double> ratio;
    std::size_t replicates_used;
    std::uint64_t seed;
};

EstimateRecord make_record(ExperimentKind kind, std::uint64_t n, const Point& query, std::string quantity,
                           std::optional<double> parameter, const MeanEstimate& mc, double prediction,
                           std::uint64_t seed);

struct ExecutionOptions {
    /// 0 means one worker per hardware thread. Results do not depend on it.
    unsigned threads = 0;
};

/// Stream tag for (kind, n); replicate r of that cell draws from
/// Rng::stream(master_seed, cell_tag(kind, n), r).
std::uint64_t cell_tag(ExperimentKind kind, std::uint64_t n);

std::vector<EstimateRecord> run_moments(const ExperimentSpec& spec, const ExecutionOptions& exec = {});

struct WeightDistributionResult {
    LogHistogram histogram;
    /// tail_slope, cdf_sup_distance and histogram_mass.
    std::vector<EstimateRecord> records;
    double wn;
    std::uint64_t n;
};

WeightDistributionResult run_weight_distribution(const ExperimentSpec& spec, const ExecutionOptions& exec = {});

std::vector<EstimateRecord> run_exceedance(const ExperimentSpec& spec, const ExecutionOptions& exec = {});
std::vector<EstimateRecord> run_lagrange(const ExperimentSpec& spec, const ExecutionOptions& exec = {});
std::vector<EstimateRecord> run_variance_bias(const ExperimentSpec& spec, const ExecutionOptions& exec = {});
std::vector<EstimateRecord> run_regression_risk(const ExperimentSpec& spec, const ExecutionOptions& exec = {});
std::vector<EstimateRecord> run_classification(const ExperimentSpec& spec, const ExecutionOptions& exec = {});
std::vector<EstimateRecord> run_extrapolation(const ExperimentSpec& spec, const ExecutionOptions& exec = {});

struct DemoRow {
    double x;
    double fhat;
    double f;
    bool is_sample;
};

/// One dataset of n_grid.front() + 1 points and the Hilbert curve on the grid;
/// sample rows follow the grid rows.
std::vector<DemoRow> run_demo(const ExperimentSpec& spec);

}  // namespace hilbert
