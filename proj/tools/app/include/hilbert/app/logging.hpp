#pragma once

#include <spdlog/logger.h>

#include <memory>

namespace hilbert::app {

/// Logger on stderr. Colour is dropped when NO_COLOR is set or stderr is not
/// a terminal. verbosity: 0 warnings, 1 info, 2+ debug.
std::shared_ptr<spdlog::logger> make_logger(int verbosity);

}  // namespace hilbert::app
