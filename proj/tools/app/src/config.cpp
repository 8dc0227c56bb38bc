#include "hilbert/app/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hilbert/errors.hpp"

namespace hilbert::app {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw ConfigError("config key '" + key + "': " + what);
}

void check_keys(const YAML::Node& map, const std::string& where, const std::set<std::string>& allowed) {
    if (!map.IsMap()) fail(where, "expected a mapping");
    for (auto it = map.begin(); it != map.end(); ++it) {
        const auto key = it->first.as<std::string>();
        if (!allowed.count(key)) {
            throw ConfigError("unknown config key '" + (where.empty() ? key : where + "." + key) + "'");
        }
    }
}

double get_double(const YAML::Node& n, const std::string& key) {
    if (!n.IsScalar()) fail(key, "expected a number");
    try {
        const double v = n.as<double>();
        if (!std::isfinite(v)) fail(key, "must be finite");
        return v;
    } catch (const YAML::BadConversion&) {
        fail(key, "expected a number, got '" + n.Scalar() + "'");
    }
}

std::uint64_t get_uint(const YAML::Node& n, const std::string& key) {
    const double v = get_double(n, key);
    if (v < 0.0 || v != std::floor(v) || v > 9007199254740992.0) fail(key, "expected a non-negative integer");
    // Integers beyond 2^53 are read exactly when written without an exponent.
    try {
        if (n.Scalar().find_first_of(".eE") == std::string::npos) return n.as<std::uint64_t>();
    } catch (const YAML::BadConversion&) {
    }
    return static_cast<std::uint64_t>(v);
}

int get_int(const YAML::Node& n, const std::string& key) {
    const double v = get_double(n, key);
    if (v != std::floor(v) || std::abs(v) > 1e9) fail(key, "expected an integer");
    return static_cast<int>(v);
}

bool get_bool(const YAML::Node& n, const std::string& key) {
    try {
        return n.as<bool>();
    } catch (const YAML::BadConversion&) {
        fail(key, "expected true or false");
    }
}

std::string get_string(const YAML::Node& n, const std::string& key) {
    if (!n.IsScalar()) fail(key, "expected a string");
    return n.Scalar();
}

std::vector<double> get_doubles(const YAML::Node& n, const std::string& key) {
    if (!n.IsSequence()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : n) out.push_back(get_double(v, key));
    return out;
}

/// A point is [x, y, ...]; in one dimension a bare number also works.
Point get_point(const YAML::Node& n, const std::string& key) {
    if (n.IsScalar()) return Point({get_double(n, key)});
    const auto v = get_doubles(n, key);
    if (v.empty()) fail(key, "point must have at least one coordinate");
    return Point(v);
}

std::vector<Point> get_points(const YAML::Node& n, const std::string& key) {
    if (!n.IsSequence()) fail(key, "expected an array of points");
    std::vector<Point> out;
    for (const auto& p : n) out.push_back(get_point(p, key));
    return out;
}

std::pair<double, double> get_pair(const YAML::Node& n, const std::string& key) {
    const auto v = get_doubles(n, key);
    if (v.size() != 2) fail(key, "expected [lo, hi]");
    return {v[0], v[1]};
}

DensityModel parse_density(const YAML::Node& n) {
    if (!n.IsMap() || !n["kind"]) fail("density", "needs a 'kind'");
    const std::string kind = get_string(n["kind"], "density.kind");
    try {
        if (kind == "uniform_box") {
            check_keys(n, "density", {"kind", "lo", "hi"});
            if (!n["lo"] || !n["hi"]) fail("density", "uniform_box needs lo and hi");
            return DensityModel::uniform_box(get_doubles(n["lo"], "density.lo"), get_doubles(n["hi"], "density.hi"));
        }
        if (kind == "unit_cube") {
            check_keys(n, "density", {"kind", "dim"});
            return DensityModel::unit_cube(n["dim"] ? get_uint(n["dim"], "density.dim") : 1);
        }
        if (kind == "uniform_ball") {
            check_keys(n, "density", {"kind", "center", "radius"});
            if (!n["center"]) fail("density", "uniform_ball needs center");
            return DensityModel::uniform_ball(get_doubles(n["center"], "density.center"),
                                              n["radius"] ? get_double(n["radius"], "density.radius") : 1.0);
        }
        if (kind == "triangular") {
            check_keys(n, "density", {"kind"});
            return DensityModel::triangular();
        }
        if (kind == "radial_heavy_tail") {
            check_keys(n, "density", {"kind", "dim"});
            return DensityModel::radial_heavy_tail(n["dim"] ? get_uint(n["dim"], "density.dim") : 1);
        }
    } catch (const InvalidArgument& e) {
        fail("density", e.what());
    }
    fail("density.kind", "unknown density '" + kind + "'");
}

TargetFunction parse_target(const YAML::Node& n, const std::string& where) {
    if (!n.IsMap() || !n["kind"]) fail(where, "needs a 'kind'");
    const std::string kind = get_string(n["kind"], where + ".kind");
    auto num = [&](const char* k, double fallback) {
        return n[k] ? get_double(n[k], where + "." + k) : fallback;
    };
    try {
        if (kind == "constant") {
            check_keys(n, where, {"kind", "value"});
            return TargetFunction::constant(num("value", 0.0));
        }
        if (kind == "linear") {
            check_keys(n, where, {"kind", "slope", "intercept"});
            if (!n["slope"]) fail(where, "linear needs slope");
            return TargetFunction::linear(get_doubles(n["slope"], where + ".slope"), num("intercept", 0.0));
        }
        if (kind == "sine") {
            check_keys(n, where, {"kind"});
            return TargetFunction::sine();
        }
        if (kind == "logistic") {
            check_keys(n, where, {"kind", "steepness", "midpoint", "floor", "ceiling"});
            return TargetFunction::logistic(num("steepness", 1.0), num("midpoint", 0.0), num("floor", 0.0),
                                            num("ceiling", 1.0));
        }
        if (kind == "polynomial") {
            check_keys(n, where, {"kind", "coeffs"});
            if (!n["coeffs"]) fail(where, "polynomial needs coeffs");
            return TargetFunction::polynomial(get_doubles(n["coeffs"], where + ".coeffs"));
        }
    } catch (const InvalidArgument& e) {
        fail(where, e.what());
    }
    fail(where + ".kind", "unknown target '" + kind + "'");
}

NoiseModel parse_noise(const YAML::Node& n) {
    if (!n.IsMap() || !n["kind"]) fail("noise", "needs a 'kind'");
    const std::string kind = get_string(n["kind"], "noise.kind");
    try {
        if (kind == "gaussian") {
            check_keys(n, "noise", {"kind", "sigma"});
            return NoiseModel::gaussian(n["sigma"] ? get_double(n["sigma"], "noise.sigma") : 0.1);
        }
        if (kind == "hetero") {
            check_keys(n, "noise", {"kind", "sigma_field"});
            if (!n["sigma_field"]) fail("noise", "hetero needs sigma_field");
            return NoiseModel::hetero(parse_target(n["sigma_field"], "noise.sigma_field"));
        }
        if (kind == "bernoulli") {
            check_keys(n, "noise", {"kind"});
            return NoiseModel::bernoulli();
        }
    } catch (const InvalidArgument& e) {
        fail("noise", e.what());
    }
    fail("noise.kind", "unknown noise '" + kind + "'");
}

std::vector<Point> linspace(double lo, double hi, std::size_t count) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(Point({lo + (hi - lo) * t}));
    }
    return out;
}

// x0 plus log-spaced offsets on both sides, 1e-6 .. reach.
std::vector<Point> lagrange_grid(double x0, double reach, std::size_t per_side) {
    std::vector<double> xs{x0};
    const double a = -6.0, b = std::log10(reach);
    for (std::size_t i = 0; i < per_side; ++i) {
        const double off = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(per_side - 1));
        xs.push_back(x0 - off);
        xs.push_back(x0 + off);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<Point> out;
    for (double x : xs) out.push_back(Point({x}));
    return out;
}

json point_json(const Point& p) {
    json a = json::array();
    for (double c : p.coords()) a.push_back(c);
    return a;
}

json points_json(const std::vector<Point>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(point_json(p));
    return a;
}

const std::set<std::string> kRunKeys{"subcommand", "seed", "format", "output", "threads", "verbosity", "wall_clock"};

const std::set<std::string> kSpecKeys{
    "replicates",   "n_grid",    "query_points",    "beta_list",       "epsilon_list",   "alpha_list",
    "hold_point",   "grid",      "grid_points",     "far_points",      "boundary_points", "wn_choice",
    "weight_sampling", "histogram_decades", "bins_per_decade", "fit_window", "chebyshev_delta",
    "bound_epsilon", "density",  "target",          "noise"};

}  // namespace

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

ExperimentKind kind_of(const std::string& subcommand) {
    if (subcommand == "demo") return ExperimentKind::demo;
    if (subcommand == "moments") return ExperimentKind::moments;
    if (subcommand == "weights-dist") return ExperimentKind::weight_distribution;
    if (subcommand == "exceedance") return ExperimentKind::exceedance;
    if (subcommand == "lagrange") return ExperimentKind::lagrange;
    if (subcommand == "variance-bias") return ExperimentKind::variance_bias;
    if (subcommand == "risk") return ExperimentKind::regression_risk;
    if (subcommand == "classify") return ExperimentKind::classification;
    if (subcommand == "extrapolate") return ExperimentKind::extrapolation;
    throw ConfigError("unknown subcommand '" + subcommand + "'");
}

RunConfig default_config(const std::string& subcommand) {
    RunConfig c;
    c.subcommand = subcommand;
    if (subcommand == "reproduce-all") return c;
    ExperimentSpec& s = c.spec;
    s.kind = kind_of(subcommand);
    s.density = DensityModel::unit_cube(1);
    s.query_points = {Point({0.5})};
    switch (s.kind) {
        case ExperimentKind::demo:
            s.density = DensityModel::uniform_box({0.25}, {0.75});
            s.target = TargetFunction::sine();
            s.noise = NoiseModel::gaussian(0.1);
            s.n_grid = {49};
            s.replicates = 1;
            s.query_points.clear();
            s.grid_points = linspace(0.0, 1.0, 1000);
            break;
        case ExperimentKind::moments:
            s.n_grid = {100, 1000, 10000, 100000};
            s.replicates = 10000;
            s.beta_list = {0.5, 2.0, 3.0};
            break;
        case ExperimentKind::weight_distribution:
            s.density = DensityModel::radial_heavy_tail(1);
            s.query_points = {Point({0.0})};
            s.n_grid = {65536};
            s.replicates = 100000;
            s.wn_choice = WnChoice::second_order;
            break;
        case ExperimentKind::exceedance:
            s.n_grid = {1000, 10000};
            s.replicates = 20000;
            s.epsilon_list = {0.1, 0.2, 0.5, 0.9, 0.99};
            break;
        case ExperimentKind::lagrange:
            s.n_grid = {400};
            s.replicates = 100;
            s.query_points.clear();
            s.hold_point = Point({0.5});
            s.grid_points = lagrange_grid(0.5, 0.2, 60);
            s.wn_choice = WnChoice::exact;
            break;
        case ExperimentKind::variance_bias:
            s.target = TargetFunction::sine();
            s.noise = NoiseModel::gaussian(0.1);
            s.n_grid = {1000, 10000, 100000};
            s.replicates = 10000;
            s.query_points = {Point({0.5}), Point({0.3})};
            break;
        case ExperimentKind::regression_risk:
            s.target = TargetFunction::constant(0.5);
            s.noise = NoiseModel::gaussian(0.1);
            s.n_grid = {1000, 10000, 100000};
            s.replicates = 10000;
            break;
        case ExperimentKind::classification:
            s.target = TargetFunction::logistic(4.0, 0.5);
            s.noise = NoiseModel::bernoulli();
            s.n_grid = {1000, 10000};
            s.replicates = 10000;
            // f = 3/4 here.
            s.query_points = {Point({0.5 + std::log(3.0) / 4.0})};
            s.alpha_list = {1.0, 0.5};
            break;
        case ExperimentKind::extrapolation:
            s.target = TargetFunction::linear({1.0}, 0.0);
            s.noise = NoiseModel::gaussian(0.0);
            s.n_grid = {10000};
            s.replicates = 1000;
            s.query_points = {Point({2.0}), Point({-1.0})};
            s.far_points = {Point({100.0})};
            s.boundary_points = {Point({1.1}), Point({1.01}), Point({1.001})};
            break;
    }
    return c;
}

RunConfig parse_config(std::string_view text, const std::string& subcommand) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config is not valid YAML: ") + e.what());
    }
    RunConfig c = default_config(subcommand);
    if (root.IsNull()) {
        finalize(c);
        return c;
    }
    std::set<std::string> allowed = kRunKeys;
    if (subcommand != "reproduce-all") allowed.insert(kSpecKeys.begin(), kSpecKeys.end());
    check_keys(root, "", allowed);

    if (auto n = root["subcommand"]; n && get_string(n, "subcommand") != subcommand) {
        fail("subcommand", "file is for '" + n.Scalar() + "' but '" + subcommand + "' was requested");
    }
    if (auto n = root["seed"]) c.spec.master_seed = get_uint(n, "seed");
    if (auto n = root["format"]) {
        const auto f = get_string(n, "format");
        if (f == "csv") c.format = OutputFormat::csv;
        else if (f == "json") c.format = OutputFormat::json;
        else fail("format", "expected csv or json");
    }
    if (auto n = root["output"]) c.output_path = get_string(n, "output");
    if (auto n = root["threads"]) c.threads = static_cast<unsigned>(get_uint(n, "threads"));
    if (auto n = root["verbosity"]) c.verbosity = get_int(n, "verbosity");
    if (auto n = root["wall_clock"]) c.wall_clock = get_bool(n, "wall_clock");
    if (subcommand == "reproduce-all") {
        finalize(c);
        return c;
    }

    ExperimentSpec& s = c.spec;
    if (auto n = root["density"]) s.density = parse_density(n);
    if (auto n = root["target"]) s.target = parse_target(n, "target");
    if (auto n = root["noise"]) s.noise = parse_noise(n);
    if (auto n = root["replicates"]) s.replicates = get_uint(n, "replicates");
    if (auto n = root["n_grid"]) {
        if (!n.IsSequence()) fail("n_grid", "expected an array of integers");
        s.n_grid.clear();
        for (const auto& v : n) s.n_grid.push_back(get_uint(v, "n_grid"));
    }
    if (auto n = root["query_points"]) s.query_points = get_points(n, "query_points");
    if (auto n = root["beta_list"]) s.beta_list = get_doubles(n, "beta_list");
    if (auto n = root["epsilon_list"]) s.epsilon_list = get_doubles(n, "epsilon_list");
    if (auto n = root["alpha_list"]) s.alpha_list = get_doubles(n, "alpha_list");
    if (auto n = root["hold_point"]) s.hold_point = get_point(n, "hold_point");
    if (root["grid"] && root["grid_points"]) fail("grid", "give either grid or grid_points, not both");
    if (auto n = root["grid"]) {
        check_keys(n, "grid", {"lo", "hi", "count"});
        if (!n["lo"] || !n["hi"] || !n["count"]) fail("grid", "needs lo, hi and count");
        const auto count = get_uint(n["count"], "grid.count");
        if (count < 1) fail("grid.count", "must be >= 1");
        s.grid_points = linspace(get_double(n["lo"], "grid.lo"), get_double(n["hi"], "grid.hi"), count);
    }
    if (auto n = root["grid_points"]) s.grid_points = get_points(n, "grid_points");
    if (auto n = root["far_points"]) s.far_points = get_points(n, "far_points");
    if (auto n = root["boundary_points"]) s.boundary_points = get_points(n, "boundary_points");
    if (auto n = root["wn_choice"]) {
        const auto v = parse_wn_choice(get_string(n, "wn_choice"));
        if (!v) fail("wn_choice", "expected exact, first_order or second_order");
        s.wn_choice = *v;
    }
    if (auto n = root["weight_sampling"]) {
        const auto v = parse_weight_sampling(get_string(n, "weight_sampling"));
        if (!v) fail("weight_sampling", "expected index_zero or all_weights");
        s.weight_sampling = *v;
    }
    if (auto n = root["histogram_decades"]) {
        const auto [lo, hi] = get_pair(n, "histogram_decades");
        if (lo != std::floor(lo) || hi != std::floor(hi)) fail("histogram_decades", "expected integers");
        s.histogram_lo_decade = static_cast<int>(lo);
        s.histogram_hi_decade = static_cast<int>(hi);
    }
    if (auto n = root["bins_per_decade"]) s.bins_per_decade = get_int(n, "bins_per_decade");
    if (auto n = root["fit_window"]) std::tie(s.fit_window_lo, s.fit_window_hi) = get_pair(n, "fit_window");
    if (auto n = root["chebyshev_delta"]) s.chebyshev_delta = get_double(n, "chebyshev_delta");
    if (auto n = root["bound_epsilon"]) s.bound_epsilon = get_double(n, "bound_epsilon");
    finalize(c);
    return c;
}

RunConfig load_config_file(const std::string& path, const std::string& subcommand) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), subcommand);
}

void finalize(RunConfig& config) {
    if (config.subcommand == "reproduce-all") return;
    try {
        validate(config.spec);
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("invalid experiment: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid experiment: ") + e.what());
    }
}

json describe(const DensityModel& density) {
    return std::visit(
        [](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, UniformBox>) return {{"kind", "uniform_box"}, {"lo", k.lo}, {"hi", k.hi}};
            if constexpr (std::is_same_v<K, UniformBall>)
                return {{"kind", "uniform_ball"}, {"center", k.center}, {"radius", k.radius}};
            if constexpr (std::is_same_v<K, Triangular1D>) return {{"kind", "triangular"}};
            if constexpr (std::is_same_v<K, RadialHeavyTail>) return {{"kind", "radial_heavy_tail"}, {"dim", k.dim}};
        },
        density.kind());
}

json describe(const TargetFunction& target) {
    return std::visit(
        [](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ConstantTarget>) return {{"kind", "constant"}, {"value", k.value}};
            if constexpr (std::is_same_v<K, LinearTarget>)
                return {{"kind", "linear"}, {"slope", k.slope}, {"intercept", k.intercept}};
            if constexpr (std::is_same_v<K, Sine1D>) return {{"kind", "sine"}};
            if constexpr (std::is_same_v<K, ClampedLogistic>)
                return {{"kind", "logistic"},
                        {"steepness", k.steepness},
                        {"midpoint", k.midpoint},
                        {"floor", k.floor},
                        {"ceiling", k.ceiling}};
            if constexpr (std::is_same_v<K, Polynomial1D>) return {{"kind", "polynomial"}, {"coeffs", k.coeffs}};
        },
        target.kind());
}

json describe(const NoiseModel& noise) {
    return std::visit(
        [](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, GaussianConstant>) return {{"kind", "gaussian"}, {"sigma", k.sigma}};
            if constexpr (std::is_same_v<K, GaussianHetero>)
                return {{"kind", "hetero"}, {"sigma_field", describe(k.sigma)}};
            if constexpr (std::is_same_v<K, BernoulliFromTarget>) return {{"kind", "bernoulli"}};
        },
        noise.kind());
}

json to_json(const RunConfig& config) {
    json j;
    j["subcommand"] = config.subcommand;
    j["seed"] = config.spec.master_seed;
    j["format"] = to_string(config.format);
    if (config.subcommand == "reproduce-all") return j;
    const ExperimentSpec& s = config.spec;
    j["density"] = describe(s.density);
    j["target"] = describe(s.target);
    j["noise"] = describe(s.noise);
    j["n_grid"] = s.n_grid;
    j["replicates"] = s.replicates;
    j["query_points"] = points_json(s.query_points);
    switch (s.kind) {
        case ExperimentKind::demo: j["grid_points"] = points_json(s.grid_points); break;
        case ExperimentKind::moments:
            j["beta_list"] = s.beta_list;
            j["weight_sampling"] = to_string(s.weight_sampling);
            break;
        case ExperimentKind::weight_distribution:
            j["wn_choice"] = to_string(s.wn_choice);
            j["weight_sampling"] = to_string(s.weight_sampling);
            j["histogram_decades"] = {s.histogram_lo_decade, s.histogram_hi_decade};
            j["bins_per_decade"] = s.bins_per_decade;
            j["fit_window"] = {s.fit_window_lo, s.fit_window_hi};
            break;
        case ExperimentKind::exceedance:
            j["epsilon_list"] = s.epsilon_list;
            j["chebyshev_delta"] = s.chebyshev_delta;
            break;
        case ExperimentKind::lagrange:
            j["hold_point"] = point_json(*s.hold_point);
            j["grid_points"] = points_json(s.grid_points);
            j["wn_choice"] = to_string(s.wn_choice);
            break;
        case ExperimentKind::classification:
            j["alpha_list"] = s.alpha_list;
            j["bound_epsilon"] = s.bound_epsilon;
            break;
        case ExperimentKind::extrapolation:
            j["far_points"] = points_json(s.far_points);
            j["boundary_points"] = points_json(s.boundary_points);
            break;
        case ExperimentKind::variance_bias:
        case ExperimentKind::regression_risk: break;
    }
    return j;
}

}  // namespace hilbert::app
