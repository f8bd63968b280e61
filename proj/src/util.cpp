#include "capflow/util.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace capflow {

namespace {

LogLevel parse_level() {
  const char* env = std::getenv("CAPFLOW_LOG");
  if (env == nullptr) return LogLevel::info;
  const std::string value(env);
  if (value == "quiet" || value == "0") return LogLevel::quiet;
  if (value == "debug" || value == "2") return LogLevel::debug;
  return LogLevel::info;
}

std::mutex& log_mutex() {
  static std::mutex m;
  return m;
}

void emit(const char* tag, const std::string& message) {
  std::lock_guard<std::mutex> lock(log_mutex());
  std::cerr << "[capflow " << tag << "] " << message << "\n";
}

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_level();
  return level;
}

void log_warn(const std::string& message) {
  if (log_level() >= LogLevel::info) emit("warn", message);
}

void log_info(const std::string& message) {
  if (log_level() >= LogLevel::info) emit("info", message);
}

void log_debug(const std::string& message) {
  if (log_level() >= LogLevel::debug) emit("debug", message);
}

}  // namespace capflow
