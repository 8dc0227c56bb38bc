#include "hilbert/app/commands.hpp"

#include <spdlog/spdlog.h>
#include <unistd.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <stdexcept>

#ifndef HILBERT_VERSION
#define HILBERT_VERSION "unknown"
#endif

namespace hilbert::app {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string extension(OutputFormat f) { return f == OutputFormat::csv ? ".csv" : ".json"; }

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json notes_for(const ExperimentSpec& s) {
    json notes = json::array();
    switch (s.kind) {
        case ExperimentKind::weight_distribution:
            notes.push_back("replicates = " + std::to_string(s.replicates) + " independent datasets");
            notes.push_back(s.weight_sampling == WeightSampling::index_zero
                                ? "one weight (w_0) per replicate"
                                : "all n+1 weights per replicate; histogram entries are correlated within a replicate");
            notes.push_back("scaling variable w = W / W_n with W_n = " + to_string(s.wn_choice));
            break;
        case ExperimentKind::lagrange:
            notes.push_back("dataset = {x0} plus n sampled points; Z uses W_n = " + to_string(s.wn_choice));
            break;
        case ExperimentKind::moments:
            notes.push_back("all beta values share the same replicate weights");
            notes.push_back(s.weight_sampling == WeightSampling::index_zero
                                ? "estimator: w_0^beta per replicate"
                                : "estimator: mean over i of w_i^beta per replicate (exchangeability)");
            break;
        case ExperimentKind::classification:
            notes.push_back("excess_risk_identity = |2f-1| * P[plugin != Bayes]; excess_risk_naive uses a fresh label");
            break;
        default: break;
    }
    return notes;
}

void annotate_time(json& metadata, const RunConfig& config, Clock::time_point start, const std::string& started) {
    if (!config.wall_clock) return;
    metadata["started_utc"] = started;
    metadata["elapsed_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

json base_metadata(const RunConfig& config) {
    json m;
    m["tool"] = kToolName;
    m["version"] = HILBERT_VERSION;
    m["subcommand"] = config.subcommand;
    m["master_seed"] = config.spec.master_seed;
    m["config"] = to_json(config);
    if (config.subcommand != "reproduce-all") m["notes"] = notes_for(config.spec);
    return m;
}

std::vector<ResultTable> cmd_demo(const RunConfig& config) {
    const auto start = Clock::now();
    const auto started = utc_now();
    const auto rows = run_demo(config.spec);
    json meta = base_metadata(config);
    annotate_time(meta, config, start, started);
    return {demo_table("demo", rows, std::move(meta))};
}

std::vector<ResultTable> run_command(const RunConfig& config) {
    const ExperimentSpec& s = config.spec;
    const ExecutionOptions exec{config.threads};
    const auto start = Clock::now();
    const auto started = utc_now();
    spdlog::info("{}: n_grid of {} values, {} replicates, seed {}", config.subcommand, s.n_grid.size(), s.replicates,
                 s.master_seed);

    std::vector<ResultTable> tables;
    auto finish = [&](std::string name, const std::vector<EstimateRecord>& records) {
        json meta = base_metadata(config);
        annotate_time(meta, config, start, started);
        tables.push_back(records_table(std::move(name), records, std::move(meta)));
    };
    switch (s.kind) {
        case ExperimentKind::demo: return cmd_demo(config);
        case ExperimentKind::moments: finish("moments", run_moments(s, exec)); break;
        case ExperimentKind::weight_distribution: {
            const auto res = run_weight_distribution(s, exec);
            json meta = base_metadata(config);
            meta["wn"] = res.wn;
            annotate_time(meta, config, start, started);
            tables.push_back(histogram_table("weight_histogram", res, meta));
            tables.push_back(records_table("weight_summary", res.records, meta));
            break;
        }
        case ExperimentKind::exceedance: finish("exceedance", run_exceedance(s, exec)); break;
        case ExperimentKind::lagrange: finish("lagrange", run_lagrange(s, exec)); break;
        case ExperimentKind::variance_bias: finish("variance_bias", run_variance_bias(s, exec)); break;
        case ExperimentKind::regression_risk: finish("regression_risk", run_regression_risk(s, exec)); break;
        case ExperimentKind::classification: finish("classification", run_classification(s, exec)); break;
        case ExperimentKind::extrapolation: finish("extrapolation", run_extrapolation(s, exec)); break;
    }
    spdlog::info("{}: done in {:.1f} s", config.subcommand,
                 std::chrono::duration<double>(Clock::now() - start).count());
    return tables;
}

std::vector<std::pair<RunConfig, std::string>> reproduce_all_cells(const RunConfig& config) {
    std::vector<std::pair<RunConfig, std::string>> cells;
    auto add = [&](const std::string& sub, const std::string& description, auto&& tweak) {
        RunConfig c = default_config(sub);
        c.format = config.format;
        c.threads = config.threads;
        c.verbosity = config.verbosity;
        c.wall_clock = config.wall_clock;
        c.spec.master_seed = config.spec.master_seed + cells.size();
        tweak(c.spec);
        finalize(c);
        cells.emplace_back(std::move(c), description);
    };
    auto keep = [](ExperimentSpec&) {};
    add("demo", "demo: 50 samples on [0.25, 0.75], sin(2 pi x) + N(0, 0.1^2), 1000-point grid on [0, 1]", keep);
    add("weights-dist", "scaled weight distribution, n = 65536", keep);
    add("lagrange", "averaged Lagrange function, n = 400, 100 repeats, x0 = 0.5", keep);
    add("moments", "weight moments E[w_0^beta] and the first-moment identity", keep);
    add("exceedance", "exceedance frequencies of w_0 against heuristic, Chebyshev and Markov levels", keep);
    add("variance-bias", "variance and bias rates for sin(2 pi x) on U[0, 1]", keep);
    add("variance-bias", "rho(x) = 0 limit: triangular density, f(y) = y, x = 0", [](ExperimentSpec& s) {
        s.density = DensityModel::triangular();
        s.target = TargetFunction::linear({1.0}, 0.0);
        s.query_points = {Point({0.0})};
        s.n_grid = {100000};
        s.replicates = 1000;
    });
    add("risk", "regression risk and the slope of 1/risk against ln n", keep);
    add("classify", "plugin classification excess risk at f(x) = 0.75", keep);
    add("extrapolate", "extrapolation outside the support for f(y) = y on U[0, 1]", keep);
    add("moments", "weight moments averaged over all n+1 indices of each replicate", [](ExperimentSpec& s) {
        s.weight_sampling = WeightSampling::all_weights;
    });
    return cells;
}

std::vector<ManifestEntry> cmd_reproduce_all(const RunConfig& config, const std::filesystem::path& dir) {
    prepare_output_dir(dir);
    const auto cells = reproduce_all_cells(config);
    const char* names[] = {"demo",          "weight_distribution", "lagrange",        "moments",
                           "exceedance",    "variance_bias",       "rho_zero",        "regression_risk",
                           "classification", "extrapolation",      "moments_all_weights"};
    std::vector<ManifestEntry> manifest;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& [cell, description] = cells[i];
        spdlog::info("reproduce-all: {} ({})", names[i], cell.subcommand);
        const auto start = Clock::now();
        auto tables = run_command(cell);
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        for (auto& t : tables) {
            if (tables.size() == 1) t.name = names[i];
            const std::string file = t.name + extension(config.format);
            write_table(t, config.format, dir / file);
            manifest.push_back({file, t.name, cell.subcommand, cell.spec.master_seed, description, elapsed});
        }
    }

    json m;
    m["tool"] = kToolName;
    m["version"] = HILBERT_VERSION;
    m["base_seed"] = config.spec.master_seed;
    m["seed_rule"] = "cell i uses base_seed + i";
    json files = json::array();
    for (const auto& e : manifest) {
        json entry = {{"file", e.file},
                      {"table", e.table},
                      {"subcommand", e.subcommand},
                      {"seed", e.seed},
                      {"description", e.description}};
        if (config.wall_clock) entry["elapsed_seconds"] = e.elapsed_seconds;
        files.push_back(std::move(entry));
    }
    m["files"] = files;
    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    out << m.dump(1) << "\n";
    if (!out) throw std::runtime_error("write failed for '" + (dir / "manifest.json").string() + "'");
    return manifest;
}

void prepare_output_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
    }
    if (::access(dir.c_str(), W_OK) != 0) {
        throw std::runtime_error("output directory '" + dir.string() + "' is not writable");
    }
}

std::vector<std::filesystem::path> emit(const std::vector<ResultTable>& tables, const RunConfig& config) {
    std::vector<std::filesystem::path> written;
    if (config.output_path.empty()) {
        for (std::size_t i = 0; i < tables.size(); ++i) {
            if (i) std::cout << '\n';
            std::cout << render(tables[i], config.format);
        }
        std::cout.flush();
        return written;
    }
    const std::filesystem::path dir(config.output_path);
    for (const auto& t : tables) {
        const auto path = dir / (t.name + extension(config.format));
        write_table(t, config.format, path);
        written.push_back(path);
    }
    return written;
}

}  // namespace hilbert::app
