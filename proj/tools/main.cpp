#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <exception>
#include <iostream>
#include <optional>

#include "hilbert/app/commands.hpp"
#include "hilbert/app/config.hpp"
#include "hilbert/app/logging.hpp"
#include "hilbert/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Flags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<unsigned> threads;
    std::optional<std::uint64_t> replicates;
    int verbose = 0;
    bool wall_clock = false;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config_path, "YAML config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_option("--out", f.out, "output directory (default: stdout)");
    sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", f.threads, "worker threads, 0 = all cores");
    sub->add_option("--replicates", f.replicates, "replicates per cell");
    sub->add_flag("-v,--verbose", f.verbose, "more logging (repeatable)");
    sub->add_flag("--wall-clock", f.wall_clock, "record start time and duration in the metadata");
}

hilbert::app::RunConfig resolve(const std::string& name, const Flags& f) {
    using namespace hilbert::app;
    RunConfig c = f.config_path.empty() ? default_config(name) : load_config_file(f.config_path, name);
    if (f.seed) c.spec.master_seed = *f.seed;
    if (f.out) c.output_path = *f.out;
    if (f.format) c.format = *f.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (f.threads) c.threads = *f.threads;
    if (f.replicates) {
        if (name == "reproduce-all") throw ConfigError("--replicates does not apply to reproduce-all");
        c.spec.replicates = *f.replicates;
    }
    c.verbosity += f.verbose;
    c.wall_clock = c.wall_clock || f.wall_clock;
    finalize(c);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hilbert kernel interpolating regression: experiments and predictions"};
    app.require_subcommand(1);
    Flags flags;
    for (const char* name : hilbert::app::kSubcommands) add_flags(app.add_subcommand(name), flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    hilbert::app::RunConfig config;
    try {
        config = resolve(name, flags);
    } catch (const hilbert::app::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    spdlog::set_default_logger(hilbert::app::make_logger(config.verbosity));

    try {
        if (name == "reproduce-all") {
            const std::string dir = config.output_path.empty() ? "reproduce" : config.output_path;
            const auto manifest = hilbert::app::cmd_reproduce_all(config, dir);
            spdlog::info("wrote {} tables and manifest.json to {}", manifest.size(), dir);
        } else {
            if (!config.output_path.empty()) hilbert::app::prepare_output_dir(config.output_path);
            const auto tables = hilbert::app::run_command(config);
            for (const auto& p : hilbert::app::emit(tables, config)) spdlog::info("wrote {}", p.string());
        }
    } catch (const hilbert::app::ConfigError& e) {
        spdlog::error("config error: {}", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitRuntime;
    }
    return 0;
}
