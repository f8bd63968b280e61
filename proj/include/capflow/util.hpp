#pragma once

#include <string>

namespace capflow {

// Verbosity from the CAPFLOW_LOG environment variable:
// "quiet"/"0", "info"/"1" (default), "debug"/"2".
enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level();
void log_warn(const std::string& message);
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace capflow
