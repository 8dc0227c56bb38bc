#include "hilbert/app/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hilbert/asymptotics.hpp"

namespace hilbert::app {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string> kRecordColumns{"kind",       "n",         "query",      "quantity",
                                              "parameter",  "mc_mean",   "mc_stderr",  "prediction",
                                              "ratio",      "replicates_used", "seed"};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::monostate>) return "";
            else if constexpr (std::is_same_v<V, double>) return format_double(v);
            else if constexpr (std::is_same_v<V, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<V, std::string>) return csv_escape(v);
            else if constexpr (std::is_same_v<V, std::vector<double>>) {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) s += ';';
                    s += format_double(v[i]);
                }
                return s;
            } else return std::to_string(v);
        },
        cell);
}

json json_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> json {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<V, double>) return std::isfinite(v) ? json(v) : json(nullptr);
            else return json(v);
        },
        cell);
}

Cell cell_from_json(const json& j) {
    if (j.is_null()) return std::monostate{};
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    if (j.is_array()) return j.get<std::vector<double>>();
    throw std::runtime_error("unsupported JSON cell");
}

std::vector<double> coords(const Point& p) { return {p.coords().begin(), p.coords().end()}; }

Cell optional_cell(const std::optional<double>& v) {
    if (v) return *v;
    return std::monostate{};
}

double as_double(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* u = std::get_if<std::uint64_t>(&c)) return static_cast<double>(*u);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    throw std::runtime_error("expected a number in the table");
}

std::uint64_t as_uint(const Cell& c) {
    if (const auto* u = std::get_if<std::uint64_t>(&c)) return *u;
    if (const auto* i = std::get_if<std::int64_t>(&c); i && *i >= 0) return static_cast<std::uint64_t>(*i);
    throw std::runtime_error("expected an unsigned integer in the table");
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string render_csv(const ResultTable& table) {
    std::string out = "# metadata: " + table.metadata.dump() + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const ResultTable& table) {
    json j;
    j["name"] = table.name;
    j["metadata"] = table.metadata;
    j["columns"] = table.columns;
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = json_cell(row[i]);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(1) + "\n";
}

std::string render(const ResultTable& table, OutputFormat format) {
    return format == OutputFormat::csv ? render_csv(table) : render_json(table);
}

ResultTable parse_json_table(const std::string& text) {
    const json j = json::parse(text);
    ResultTable t;
    t.name = j.at("name").get<std::string>();
    t.metadata = j.at("metadata");
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
        std::vector<Cell> row;
        for (const auto& c : t.columns) row.push_back(r.contains(c) ? cell_from_json(r.at(c)) : Cell{});
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_table(const ResultTable& table, OutputFormat format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << render(table, format);
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

ResultTable records_table(std::string name, const std::vector<EstimateRecord>& records, json metadata) {
    ResultTable t{std::move(name), std::move(metadata), kRecordColumns, {}};
    for (const auto& r : records) {
        t.rows.push_back({to_string(r.kind), r.n, coords(r.query), r.quantity, optional_cell(r.parameter), r.mc_mean,
                          r.mc_stderr, r.prediction, optional_cell(r.ratio), static_cast<std::uint64_t>(r.replicates_used),
                          r.seed});
    }
    return t;
}

std::vector<EstimateRecord> records_from_table(const ResultTable& table) {
    if (table.columns != kRecordColumns) throw std::runtime_error("table '" + table.name + "' does not hold records");
    std::vector<EstimateRecord> out;
    for (const auto& row : table.rows) {
        const auto kind = parse_experiment_kind(std::get<std::string>(row[0]));
        if (!kind) throw std::runtime_error("unknown experiment kind in table");
        auto opt = [](const Cell& c) -> std::optional<double> {
            if (std::holds_alternative<std::monostate>(c)) return std::nullopt;
            return as_double(c);
        };
        // A non-finite value is written as null and comes back absent.
        auto num = [&](const Cell& c) { return opt(c).value_or(std::nan("")); };
        out.push_back({*kind, as_uint(row[1]), Point(std::get<std::vector<double>>(row[2])),
                       std::get<std::string>(row[3]), opt(row[4]), num(row[5]), num(row[6]), num(row[7]), opt(row[8]),
                       static_cast<std::size_t>(as_uint(row[9])), as_uint(row[10])});
    }
    return out;
}

ResultTable histogram_table(std::string name, const WeightDistributionResult& result, json metadata) {
    ResultTable t{std::move(name), std::move(metadata),
                  {"bin_lo", "bin_hi", "center", "count", "density", "predicted_density"}, {}};
    const auto& h = result.histogram;
    for (std::size_t i = 0; i < h.bins(); ++i) {
        t.rows.push_back({h.lower_edge(i), h.upper_edge(i), h.center(i), h.count(i), h.density(i),
                          scaling_pdf(h.center(i))});
    }
    return t;
}

ResultTable demo_table(std::string name, const std::vector<DemoRow>& rows, json metadata) {
    ResultTable t{std::move(name), std::move(metadata), {"x", "fhat", "f", "is_sample"}, {}};
    for (const auto& r : rows) t.rows.push_back({r.x, r.fhat, r.f, r.is_sample});
    return t;
}

}  // namespace hilbert::app
