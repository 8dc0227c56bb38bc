#include "hilbert/app/logging.hpp"

#include <spdlog/sinks/ansicolor_sink.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <unistd.h>

#include <cstdlib>

namespace hilbert::app {

std::shared_ptr<spdlog::logger> make_logger(int verbosity) {
    const char* no_color = std::getenv("NO_COLOR");
    const bool plain = (no_color && *no_color) || !isatty(STDERR_FILENO);
    spdlog::sink_ptr sink;
    if (plain) {
        sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
    } else {
        sink = std::make_shared<spdlog::sinks::ansicolor_stderr_sink_mt>();
    }
    auto logger = std::make_shared<spdlog::logger>("hilbert", sink);
    logger->set_pattern("[%l] %v");
    logger->set_level(verbosity <= 0 ? spdlog::level::warn
                      : verbosity == 1 ? spdlog::level::info
                                       : spdlog::level::debug);
    return logger;
}

}  // namespace hilbert::app
