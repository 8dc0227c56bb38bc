#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hilbert/app/config.hpp"
#include "hilbert/app/table.hpp"

namespace hilbert::app {

inline constexpr const char* kToolName = "hilbert";

/// Tool version, resolved config and seed; enough to rerun bit-identically.
nlohmann::ordered_json base_metadata(const RunConfig& config);

/// Runs one experiment subcommand (anything but reproduce-all).
std::vector<ResultTable> run_command(const RunConfig& config);

std::vector<ResultTable> cmd_demo(const RunConfig& config);

struct ManifestEntry {
    std::string file;
    std::string table;
    std::string subcommand;
    std::uint64_t seed;
    std::string description;
    double elapsed_seconds = 0.0;  // whole cell; written to the manifest only with wall_clock
};

/// The configurations reproduce-all runs: the three figures and one cell per
/// predicted rate. Cell i uses master seed base_seed + i.
std::vector<std::pair<RunConfig, std::string>> reproduce_all_cells(const RunConfig& config);

/// Runs every cell, writes one file per table plus manifest.json into `dir`,
/// and returns the manifest.
std::vector<ManifestEntry> cmd_reproduce_all(const RunConfig& config, const std::filesystem::path& dir);

/// Creates `dir` if needed and checks it is writable, before any compute.
void prepare_output_dir(const std::filesystem::path& dir);

/// Writes tables as <dir>/<name>.<ext>, or to stdout when dir is empty.
std::vector<std::filesystem::path> emit(const std::vector<ResultTable>& tables, const RunConfig& config);

}  // namespace hilbert::app
