#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "hilbert/app/config.hpp"
#include "hilbert/experiments.hpp"

namespace hilbert::app {

/// A table cell. Points are stored as coordinate vectors.
using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, bool, std::string, std::vector<double>>;

struct ResultTable {
    std::string name;
    nlohmann::ordered_json metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Decimal rendering with 17 significant digits and a '.' separator.
std::string format_double(double v);

/// CSV: one "# metadata: {json}" comment line, the header, then rows.
/// Points are joined with ';'. Absent values are empty fields.
std::string render_csv(const ResultTable& table);
/// JSON: {"name", "metadata", "columns", "rows": [{column: value}]}.
std::string render_json(const ResultTable& table);
std::string render(const ResultTable& table, OutputFormat format);

ResultTable parse_json_table(const std::string& text);

/// Writes to `path`; throws std::runtime_error naming the path on failure.
void write_table(const ResultTable& table, OutputFormat format, const std::filesystem::path& path);

ResultTable records_table(std::string name, const std::vector<EstimateRecord>& records,
                          nlohmann::ordered_json metadata);
std::vector<EstimateRecord> records_from_table(const ResultTable& table);

ResultTable histogram_table(std::string name, const WeightDistributionResult& result,
                            nlohmann::ordered_json metadata);
ResultTable demo_table(std::string name, const std::vector<DemoRow>& rows, nlohmann::ordered_json metadata);

}  // namespace hilbert::app
