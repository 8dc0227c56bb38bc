#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hilbert/experiments.hpp"

namespace hilbert::app {

/// Bad configuration: unknown key, wrong type or an invalid regime.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

std::string to_string(OutputFormat f);

/// Subcommand names accepted on the command line.
inline constexpr const char* kSubcommands[] = {"demo",     "moments",       "weights-dist", "exceedance",
                                               "lagrange", "variance-bias", "risk",         "classify",
                                               "extrapolate", "reproduce-all"};

struct RunConfig {
    std::string subcommand;
    ExperimentSpec spec;
    OutputFormat format = OutputFormat::csv;
    /// Output directory; empty means standard output.
    std::string output_path;
    unsigned threads = 0;
    int verbosity = 0;
    /// Adds wall-clock fields to the metadata (which then differs run to run).
    bool wall_clock = false;
};

/// Defaults for a subcommand; these are also the cells reproduce-all runs.
RunConfig default_config(const std::string& subcommand);

/// Parses YAML text (flat sections of scalars and arrays) on top of the
/// subcommand defaults and validates the resulting spec.
RunConfig parse_config(std::string_view text, const std::string& subcommand);
RunConfig load_config_file(const std::string& path, const std::string& subcommand);

/// Re-validates after command-line overrides.
void finalize(RunConfig& config);

/// The resolved configuration in the config-file schema. JSON is valid YAML,
/// so the dump parses back through parse_config to the same configuration.
nlohmann::ordered_json to_json(const RunConfig& config);

nlohmann::ordered_json describe(const DensityModel& density);
nlohmann::ordered_json describe(const TargetFunction& target);
nlohmann::ordered_json describe(const NoiseModel& noise);

ExperimentKind kind_of(const std::string& subcommand);

}  // namespace hilbert::app
