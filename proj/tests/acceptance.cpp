// Acceptance run: one PASS/FAIL line per criterion. C5-C13 are judged on the
// tables written by reproduce-all, C14 compares two full runs byte for byte.

#include <spdlog/spdlog.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hilbert/app/commands.hpp"
#include "hilbert/app/config.hpp"
#include "hilbert/app/table.hpp"
#include "hilbert/asymptotics.hpp"
#include "hilbert/densities.hpp"
#include "hilbert/estimators.hpp"
#include "hilbert/experiments.hpp"
#include "hilbert/geometry.hpp"
#include "hilbert/rng.hpp"

using namespace hilbert;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Regression brackets frozen from one pre-run of reproduce-all with base seed
// 20240101 (observed values in the comments).
constexpr double kWeightCdfDistanceMax = 0.02;  // 0.0110
constexpr double kLagrangeLinfMax = 0.08;         // 0.059; pointwise stderr is about 0.017 at 100 repeats
constexpr double kVarianceRatioLo = 0.76;     // 0.808 +- 0.016 at n = 1e5
constexpr double kVarianceRatioHi = 0.90;
constexpr double kBiasRatioLo = 0.79;         // 0.823 +- 0.003 at n = 1e5
constexpr double kBiasRatioHi = 0.86;

constexpr std::uint64_t kBaseSeed = 20240101;

struct Verdict {
    bool pass = true;
    std::string detail;
    double seconds = 0.0;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

int failures = 0;

void report(int id, const std::string& title, const Verdict& v, double budget_seconds) {
    Verdict out = v;
    out.require(v.seconds <= budget_seconds, "runtime " + fmt(v.seconds, 3) + " s > budget " + fmt(budget_seconds) + " s");
    if (!out.pass) ++failures;
    std::printf("[%s] C%d %s (%.1f s): %s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), v.seconds,
                out.detail.c_str());
    std::fflush(stdout);
}

template <class F>
Verdict timed(F&& f) {
    const auto start = Clock::now();
    Verdict v = f();
    v.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return v;
}

Dataset random_dataset(Rng& rng, std::size_t dim) {
    const std::size_t n = 2 + rng.next() % 49;
    const double scale = std::exp(3.0 * rng.normal());
    std::vector<double> coords(n * dim);
    for (auto& c : coords) c = scale * rng.normal();
    std::vector<double> labels(n);
    for (auto& y : labels) y = 10.0 * rng.normal();
    return Dataset(dim, std::move(coords), std::move(labels));
}

Point random_query(Rng& rng, const Dataset& data) {
    const std::size_t j = rng.next() % data.size();
    std::vector<double> q(data.point(j).begin(), data.point(j).end());
    double spread = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) spread = std::max(spread, std::abs(data.point(i)[0]));
    const double step = spread * std::exp(-8.0 * rng.uniform());
    for (auto& c : q) c += step * rng.normal();
    return Point(std::move(q));
}

Verdict exact_invariants() {
    constexpr int kCases = 10000;
    Verdict v;
    Rng rng(kBaseSeed);
    int partition_bad = 0, interp_bad = 0, similar_bad = 0, range_bad = 0;
    double worst_partition = 0.0, worst_similar = 0.0;
    std::vector<double> w;
    for (int t = 0; t < kCases; ++t) {
        const std::size_t dim = 1 + rng.next() % 4;
        const Dataset data = random_dataset(rng, dim);
        w.resize(data.size());

        const Point x = random_query(rng, data);
        hilbert_weights_into(x.coords(), data, static_cast<double>(dim), w);
        double sum = 0.0;
        for (const double wi : w) sum += wi;
        worst_partition = std::max(worst_partition, std::abs(sum - 1.0));
        if (!(std::abs(sum - 1.0) <= 1e-12)) ++partition_bad;

        const std::size_t j = rng.next() % data.size();
        const Point xj(std::vector<double>(data.point(j).begin(), data.point(j).end()));
        const auto hit = hilbert_weights_into(xj.coords(), data, static_cast<double>(dim), w);
        bool delta = hit == j;
        for (std::size_t i = 0; i < w.size(); ++i) delta = delta && w[i] == (i == j ? 1.0 : 0.0);
        if (!delta) ++interp_bad;

        // Similarity: scale, reflection per axis, a rotation in the first plane, translation.
        const double scale = std::exp(4.0 * rng.normal());
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        double spread = 0.0;
        for (const double c : data.coords()) spread = std::max(spread, std::abs(c));
        std::vector<double> flip(dim), shift(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            flip[k] = rng.uniform() < 0.5 ? -1.0 : 1.0;
            shift[k] = scale * spread * 5.0 * rng.normal();
        }
        auto map = [&](std::span<const double> p) {
            std::vector<double> m(p.begin(), p.end());
            if (dim >= 2) {
                const double a = m[0], b = m[1];
                m[0] = std::cos(angle) * a - std::sin(angle) * b;
                m[1] = std::sin(angle) * a + std::cos(angle) * b;
            }
            for (std::size_t k = 0; k < dim; ++k) m[k] = scale * flip[k] * m[k] + shift[k];
            return m;
        };
        std::vector<double> coords;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const auto m = map(data.point(i));
            coords.insert(coords.end(), m.begin(), m.end());
        }
        const Dataset moved(dim, coords, std::vector<double>(data.labels().begin(), data.labels().end()));
        std::vector<double> w2(data.size());
        hilbert_weights_into(x.coords(), data, static_cast<double>(dim), w);
        hilbert_weights_into(map(x.coords()), moved, static_cast<double>(dim), w2);
        double diff = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) diff = std::max(diff, std::abs(w[i] - w2[i]));
        worst_similar = std::max(worst_similar, diff);
        if (!(diff <= 1e-10)) ++similar_bad;

        const auto [lo, hi] = std::ranges::minmax(data.labels());
        const double fh = hilbert_regress(x, data).value;
        const double fs = shepard_regress(x, data, 0.5 + 3.0 * rng.uniform()).value;
        const double fw = winn_regress(x, data, 1 + rng.next() % data.size(), 0.1 + 0.3 * dim * rng.uniform()).value;
        for (const double f : {fh, fs, fw}) {
            if (!(f >= lo && f <= hi)) ++range_bad;
        }
    }
    v.require(partition_bad == 0, std::to_string(partition_bad) + " partition-of-unity cases");
    v.require(interp_bad == 0, std::to_string(interp_bad) + " interpolation cases");
    v.require(similar_bad == 0, std::to_string(similar_bad) + " similarity cases");
    v.require(range_bad == 0, std::to_string(range_bad) + " range cases");
    v.note(std::to_string(kCases) + " cases each; max |sum w - 1| = " + fmt(worst_partition, 3) +
           ", max similarity deviation = " + fmt(worst_similar, 3));
    return v;
}

Verdict wn_solver() {
    Verdict v;
    double worst = 0.0;
    for (const std::uint64_t n : {3ULL, 400ULL, 1000ULL, 65536ULL, 100000ULL, 1000000000ULL}) {
        const double w = solve_wn(n).exact;
        worst = std::max(worst, std::abs(w * std::log(1.0 / w) * static_cast<double>(n) - 1.0));
    }
    v.require(worst < 1e-14, "residual " + fmt(worst, 3));
    const ScaleWn s = solve_wn(400);
    v.require(std::abs(1.0 / s.exact - 3232.39) <= 0.01, "1/W_400 = " + fmt(1.0 / s.exact, 10));
    v.require(std::abs(1.0 / s.first_order - 2396.59) <= 0.01, "400 ln 400 = " + fmt(1.0 / s.first_order, 10));
    v.note("1/W_400 = " + fmt(1.0 / s.exact, 10) + ", 400 ln 400 = " + fmt(1.0 / s.first_order, 10) +
           ", max relative residual = " + fmt(worst, 3));
    return v;
}

Verdict analytic_oracles() {
    Verdict v;
    double worst = 0.0;
    auto check = [&](double got, double want, const std::string& what) {
        worst = std::max(worst, std::abs(got - want));
        v.require(std::abs(got - want) <= 1e-6, what + " = " + fmt(got, 12) + " vs " + fmt(want, 12));
    };
    for (const std::size_t d : {1u, 2u}) {
        const auto ball = DensityModel::uniform_ball(std::vector<double>(d, 0.0), 1.0);
        for (const double beta : {0.25, 0.5, 0.75}) {
            check(kappa_beta(Point(std::vector<double>(d, 0.0)), ball, beta), 1.0 / (1.0 - beta),
                  "kappa_beta(d=" + std::to_string(d) + ", beta=" + fmt(beta) + ")");
        }
    }
    const auto box = DensityModel::unit_cube(1);
    check(lambda_weight(Point({2.0}), box), std::numbers::ln2, "lambda(2)");
    const auto tri = DensityModel::triangular();
    const auto line = TargetFunction::linear({1.0}, 0.0);
    check(kappa(Point({0.0}), tri, line), 1.0, "triangular kappa(0)");
    check(lambda_weight(Point({0.0}), tri), 2.0, "triangular lambda(0)");
    check(rho_zero_limit(Point({0.0}), tri, line), 0.5, "triangular kappa/lambda");
    check(extrapolation_limit(Point({2.0}), box, line), 2.0 - 1.0 / std::numbers::ln2, "extrapolation limit at 2");
    v.note("max deviation " + fmt(worst, 3) + " over 11 oracles");
    return v;
}

// Tables of one reproduce-all run, keyed by table name.
struct Run {
    fs::path dir;
    std::vector<app::ManifestEntry> manifest;
    double seconds = 0.0;

    std::vector<EstimateRecord> records(const std::string& table) const {
        std::ifstream in(dir / (table + ".json"), std::ios::binary);
        std::stringstream text;
        text << in.rdbuf();
        return app::records_from_table(app::parse_json_table(text.str()));
    }
    double cell_seconds(const std::string& table) const {
        for (const auto& e : manifest) {
            if (e.table == table) return e.elapsed_seconds;
        }
        return 0.0;
    }
};

Run reproduce(const fs::path& dir, unsigned threads) {
    app::RunConfig config = app::default_config("reproduce-all");
    config.spec.master_seed = kBaseSeed;
    config.format = app::OutputFormat::json;
    config.threads = threads;
    config.verbosity = 0;
    const auto start = Clock::now();
    Run run{dir, app::cmd_reproduce_all(config, dir), 0.0};
    run.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return run;
}

std::vector<EstimateRecord> select(const std::vector<EstimateRecord>& all, const std::string& quantity,
                                   std::function<bool(const EstimateRecord&)> keep = nullptr) {
    std::vector<EstimateRecord> out;
    for (const auto& r : all) {
        if (r.quantity == quantity && (!keep || keep(r))) out.push_back(r);
    }
    std::ranges::sort(out, {}, &EstimateRecord::n);
    return out;
}

bool at(const EstimateRecord& r, double x) { return std::abs(r.query[0] - x) < 1e-12; }

Verdict first_moment(const Run& run) {
    Verdict v;
    const auto recs = run.records("moments");
    int seen = 0;
    for (const std::uint64_t n : {100ULL, 1000ULL, 10000ULL}) {
        for (const auto& r : select(recs, "moment", [&](const EstimateRecord& r) { return r.parameter == 1.0 && r.n == n; })) {
            ++seen;
            const double want = 1.0 / static_cast<double>(n + 1);
            const double z = (r.mc_mean - want) / r.mc_stderr;
            v.require(r.replicates_used == 10000, "replicates " + std::to_string(r.replicates_used));
            v.require(std::abs(z) <= 4.0, "n=" + std::to_string(n) + " z=" + fmt(z, 3));
            v.note("n=" + std::to_string(n) + " z=" + fmt(z, 3));
        }
    }
    v.require(seen == 3, "expected 3 first-moment cells, found " + std::to_string(seen));
    v.seconds = run.cell_seconds("moments");
    return v;
}

Verdict weight_distribution(const Run& run) {
    Verdict v;
    const auto recs = run.records("weight_summary");
    const auto slope = select(recs, "tail_slope");
    const auto ks = select(recs, "cdf_sup_distance");
    v.require(slope.size() == 1 && ks.size() == 1, "summary records missing");
    if (!v.pass) return v;
    v.require(slope[0].n == 65536, "n = " + std::to_string(slope[0].n));
    v.require(slope[0].replicates_used >= 100000, "replicates " + std::to_string(slope[0].replicates_used));
    v.require(std::abs(slope[0].mc_mean + 2.0) <= 0.2, "slope " + fmt(slope[0].mc_mean));
    v.require(ks[0].mc_mean <= kWeightCdfDistanceMax, "sup-CDF distance " + fmt(ks[0].mc_mean));
    v.note("slope " + fmt(slope[0].mc_mean, 5) + " +- " + fmt(slope[0].mc_stderr, 2) + ", sup-CDF distance " +
           fmt(ks[0].mc_mean, 4) + " (bracket " + fmt(kWeightCdfDistanceMax) + ")");
    v.seconds = run.cell_seconds("weight_histogram");
    return v;
}

Verdict lagrange_curve(const Run& run) {
    Verdict v;
    const auto recs = select(run.records("lagrange"), "lagrange");
    const double inv_wn = 3232.39;
    double linf = 0.0, worst_pred = 0.0;
    std::size_t used = 0;
    for (const auto& r : recs) {
        const double dist = std::abs(r.query[0] - 0.5);
        if (dist > 0.2 + 1e-12) continue;
        ++used;
        v.require(r.n == 400 && r.replicates_used == 100, "cell shape");
        linf = std::max(linf, std::abs(r.mc_mean - r.prediction));
        worst_pred = std::max(worst_pred, std::abs(r.prediction - 1.0 / (1.0 + 2.0 * dist * inv_wn)));
    }
    v.require(used >= 50, "only " + std::to_string(used) + " grid points");
    v.require(worst_pred <= 1e-5, "prediction differs from 1/(1+2|x-x0| 3232.39) by " + fmt(worst_pred, 3));
    v.require(linf <= kLagrangeLinfMax, "L-inf " + fmt(linf));
    v.note("L-inf " + fmt(linf, 4) + " over " + std::to_string(used) + " points (bracket " + fmt(kLagrangeLinfMax) + ")");
    v.seconds = run.cell_seconds("lagrange");
    return v;
}

// |ratio - 1| strictly decreasing across the n-grid.
bool approaches_one(const std::vector<EstimateRecord>& cells, std::string& trace) {
    bool ok = true;
    double last = INFINITY;
    for (const auto& r : cells) {
        const double gap = std::abs(r.ratio.value_or(NAN) - 1.0);
        trace += (trace.empty() ? "" : ", ") + std::string("n=") + std::to_string(r.n) + ": " + fmt(r.ratio.value_or(NAN), 4);
        ok = ok && gap < last;
        last = gap;
    }
    return ok;
}

Verdict variance_rate(const Run& run) {
    Verdict v;
    const auto cells = select(run.records("variance_bias"), "variance", [](const EstimateRecord& r) { return at(r, 0.5); });
    v.require(cells.size() == 3, "expected 3 cells");
    if (!v.pass) return v;
    std::string trace;
    v.require(approaches_one(cells, trace), "|ratio - 1| not strictly decreasing");
    const double last = cells.back().ratio.value_or(NAN);
    v.require(last >= kVarianceRatioLo && last <= kVarianceRatioHi, "final ratio outside bracket");
    v.note("V ln n / sigma^2 " + trace + " (final bracket [" + fmt(kVarianceRatioLo) + ", " + fmt(kVarianceRatioHi) + "])");
    v.seconds = run.cell_seconds("variance_bias");
    return v;
}

Verdict bias_rate(const Run& run) {
    Verdict v;
    const auto recs = run.records("variance_bias");
    const auto cells = select(recs, "mean_shift", [](const EstimateRecord& r) { return at(r, 0.3); });
    v.require(cells.size() == 3, "expected 3 cells");
    if (!v.pass) return v;
    std::string trace;
    v.require(approaches_one(cells, trace), "ratio not trending toward 1");
    const double last = cells.back().ratio.value_or(NAN);
    v.require(last >= kBiasRatioLo && last <= kBiasRatioHi, "final ratio outside bracket");
    const auto bias = select(recs, "squared_bias", [](const EstimateRecord& r) { return at(r, 0.5) && r.n == 10000; });
    const auto var = select(recs, "variance", [](const EstimateRecord& r) { return at(r, 0.5) && r.n == 10000; });
    v.require(bias.size() == 1 && var.size() == 1, "x = 0.5 cells missing");
    if (!v.pass) return v;
    const double share = bias[0].mc_mean / var[0].mc_mean;
    v.require(share < 0.05, "squared bias is " + fmt(share) + " of the variance");
    v.note("shift 2 ln n / kappa " + trace + " (final bracket [" + fmt(kBiasRatioLo) + ", " + fmt(kBiasRatioHi) +
           "]); at x=0.5, n=1e4: bias^2 / variance = " + fmt(share, 3));
    v.seconds = run.cell_seconds("variance_bias");
    return v;
}

Verdict rho_zero(const Run& run) {
    Verdict v;
    const auto cells = select(run.records("rho_zero"), "mean_shift");
    v.require(cells.size() == 1, "expected one cell");
    if (!v.pass) return v;
    const auto& r = cells[0];
    v.require(r.n == 100000 && r.replicates_used == 1000 && at(r, 0.0), "cell shape");
    // f(0) = 0, so the mean shift is the mean estimate itself.
    v.require(std::abs(r.mc_mean - 0.5) <= 0.05, "mean fhat(0) = " + fmt(r.mc_mean));
    v.note("mean fhat(0) = " + fmt(r.mc_mean, 5) + " +- " + fmt(r.mc_stderr, 2) + " vs kappa/lambda = " + fmt(r.prediction));
    v.seconds = run.cell_seconds("rho_zero");
    return v;
}

Verdict risk_slope(const Run& run) {
    Verdict v;
    const auto recs = run.records("regression_risk");
    const auto slope = select(recs, "inverse_risk_slope");
    const auto risks = select(recs, "risk");
    v.require(slope.size() == 1, "slope record missing");
    v.require(risks.size() == 3 && risks.front().n == 1000 && risks.back().n == 100000, "n-grid");
    if (!v.pass) return v;
    const double rel = slope[0].mc_mean / slope[0].prediction - 1.0;
    v.require(std::abs(rel) <= 0.25, "relative error " + fmt(rel));
    v.note("slope " + fmt(slope[0].mc_mean, 5) + " +- " + fmt(slope[0].mc_stderr, 3) + " vs 1/sigma^2 = " +
           fmt(slope[0].prediction, 5));
    v.seconds = run.cell_seconds("regression_risk");
    return v;
}

Verdict classification(const Run& run) {
    Verdict v;
    const auto recs = run.records("classification");
    const auto identity = select(recs, "excess_risk_identity", [](const EstimateRecord& r) { return r.parameter == 1.0; });
    const auto naive = select(recs, "excess_risk_naive", [](const EstimateRecord& r) { return r.parameter == 1.0; });
    v.require(identity.size() == 2 && naive.size() == 2, "expected n in {1e3, 1e4}");
    if (!v.pass) return v;
    const auto f = TargetFunction::logistic(4.0, 0.5);
    for (std::size_t i = 0; i < identity.size(); ++i) {
        const auto& r = identity[i];
        const double fx = f(r.query);
        v.require(std::abs(fx - 0.75) < 1e-12, "f(query) = " + fmt(fx));
        const double bound = 2.0 * std::sqrt(fx * (1.0 - fx)) / std::sqrt(std::log(static_cast<double>(r.n)));
        v.require(r.mc_mean >= 0.0, "negative excess risk");
        v.require(r.mc_mean <= bound, "excess risk " + fmt(r.mc_mean) + " above " + fmt(bound));
        v.require(std::abs(r.prediction - bound) <= 1e-12 * bound, "reported bound differs from 2 sigma / sqrt(ln n)");
        const double gap = std::abs(r.mc_mean - naive[i].mc_mean);
        const double se = std::hypot(r.mc_stderr, naive[i].mc_stderr);
        v.require(gap <= 4.0 * se, "identity and naive differ by " + fmt(gap / se, 3) + " stderr");
        v.note("n=" + std::to_string(r.n) + ": identity " + fmt(r.mc_mean, 4) + ", naive " + fmt(naive[i].mc_mean, 4) +
               ", bound " + fmt(bound, 4));
    }
    v.seconds = run.cell_seconds("classification");
    return v;
}

Verdict extrapolation(const Run& run) {
    Verdict v;
    const auto recs = run.records("extrapolation");
    const auto at2 = select(recs, "extrapolation", [](const EstimateRecord& r) { return at(r, 2.0) && r.n == 10000; });
    const auto far = select(recs, "far_field", [](const EstimateRecord& r) { return at(r, 100.0); });
    v.require(at2.size() == 1 && far.size() == 1, "cells missing");
    if (!v.pass) return v;
    v.require(std::abs(at2[0].mc_mean - 0.557305) <= 0.02, "fhat(2) = " + fmt(at2[0].mc_mean));
    v.require(std::abs(far[0].mc_mean - 0.5) <= 0.01, "fhat(100) = " + fmt(far[0].mc_mean));

    const auto start = Clock::now();
    ExperimentSpec s;
    s.kind = ExperimentKind::extrapolation;
    s.target = TargetFunction::constant(0.37);
    s.noise = NoiseModel::gaussian(0.0);
    s.n_grid = {100, 10000};
    s.replicates = 200;
    s.query_points = {Point({-3.0}), Point({1.5}), Point({1e6})};
    s.master_seed = kBaseSeed;
    bool exact = true;
    for (const auto& r : run_extrapolation(s)) {
        if (r.quantity == "extrapolation") exact = exact && r.mc_mean == 0.37 && r.mc_stderr == 0.0;
    }
    v.require(exact, "constant target not reproduced exactly");
    v.note("fhat(2) = " + fmt(at2[0].mc_mean, 6) + ", fhat(100) = " + fmt(far[0].mc_mean, 6) +
           ", constant target exact at exterior points");
    v.seconds = run.cell_seconds("extrapolation") + std::chrono::duration<double>(Clock::now() - start).count();
    return v;
}

Verdict exceedance(const Run& run) {
    Verdict v;
    int checked = 0;
    for (const auto& r : select(run.records("exceedance"), "exceedance_markov")) {
        const double eps = r.parameter.value_or(NAN);
        if (eps != 0.1 && eps != 0.5 && eps != 0.9) continue;
        if (r.n != 1000 && r.n != 10000) continue;
        ++checked;
        const double ceiling = 1.0 / (eps * static_cast<double>(r.n));
        v.require(std::abs(r.prediction - ceiling) <= 1e-15, "reported ceiling differs from 1/(eps n)");
        v.require(r.mc_mean <= ceiling + 4.0 * r.mc_stderr,
                  "n=" + std::to_string(r.n) + " eps=" + fmt(eps) + ": " + fmt(r.mc_mean) + " > " + fmt(ceiling));
    }
    v.require(checked == 6, "expected 6 cells, found " + std::to_string(checked));
    v.note(std::to_string(checked) + " cells at or below the Markov ceiling");
    v.seconds = run.cell_seconds("exceedance");
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Verdict determinism(const Run& a, const Run& b) {
    Verdict v;
    std::set<std::string> declared{"manifest.json"};
    for (const auto& e : a.manifest) declared.insert(e.file);
    for (const Run* run : {&a, &b}) {
        std::set<std::string> present;
        for (const auto& entry : fs::directory_iterator(run->dir)) present.insert(entry.path().filename().string());
        v.require(present == declared, "file set differs from the manifest in " + run->dir.string());
    }
    std::size_t bytes = 0;
    for (const auto& name : declared) {
        const std::string x = slurp(a.dir / name), y = slurp(b.dir / name);
        bytes += x.size();
        v.require(!x.empty() && x == y, name + " differs");
    }
    bool has_histogram = false;
    for (const auto& e : a.manifest) has_histogram = has_histogram || e.table == "weight_histogram";
    v.require(has_histogram, "manifest lacks the weight histogram");
    v.note(std::to_string(declared.size()) + " files, " + std::to_string(bytes) +
           " bytes identical across runs with 1 and 2 threads");
    v.seconds = std::max(a.seconds, b.seconds);
    return v;
}

}  // namespace

int main() {
    spdlog::set_level(spdlog::level::warn);
    std::printf("acceptance: base seed %llu\n", static_cast<unsigned long long>(kBaseSeed));
    report(1, "exact invariants", timed(exact_invariants), 60);
    report(3, "W_n solver", timed(wn_solver), 1);
    report(4, "quadrature against analytic oracles", timed(analytic_oracles), 10);

    const fs::path root = fs::temp_directory_path() / ("hilbert_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    const Run a = reproduce(root / "a", 1);
    const Run b = reproduce(root / "b", 2);

    report(2, "first-moment identity", first_moment(a), 120);
    report(5, "scaled weight distribution", weight_distribution(a), 600);
    report(6, "averaged Lagrange curve", lagrange_curve(a), 60);
    report(7, "variance rate", variance_rate(a), 600);
    report(8, "bias rate", bias_rate(a), 600);
    report(9, "rho = 0 limit", rho_zero(a), 180);
    report(10, "regression risk slope", risk_slope(a), 600);
    report(11, "plugin classification", classification(a), 300);
    report(12, "extrapolation", extrapolation(a), 180);
    report(13, "exceedance against Markov", exceedance(a), 180);
    report(14, "reproduce-all determinism", determinism(a, b), 1800);

    fs::remove_all(root);
    std::printf("acceptance: %d of 14 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
