#pragma once

#include <stdexcept>
#include <string>

#include "capflow/flow.hpp"

namespace capflow {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct OutputSpec {
  std::string csv_path = "flow.csv";
  std::string summary_path = "summary.json";
  std::string mesh_path;   // basename; empty disables mesh export
  int mesh_every = 0;      // write an OBJ every k-th record (0 = never)
  int mesh_sectors = 64;   // revolution sectors for axisymmetric runs
};

// Full experiment description.  Angles are degrees here (human-facing);
// radians everywhere else.  Unknown JSON keys are rejected.
struct FlowConfig {
  double theta_degrees = 90.0;
  int n = 2;
  GridSpec grid;
  SteppingSpec stepping;
  MonitorPolicy monitors;
  InitSpec init;
  OutputSpec output;

  FlowRunConfig to_run_config() const;
};

FlowConfig parse_config(const std::string& json_text);
FlowConfig load_config(const std::string& path);

struct RunSummary {
  std::string stop_reason;
  std::string stop_detail;
  double theta_degrees = 0.0;
  int n = 2;
  double final_t = 0.0;
  long steps = 0;
  double r_predicted = 0.0;
  double r_fitted = 0.0;
  double final_deficit_norm = 0.0;
  double final_sup_G = 0.0;
  double final_distance_to_cap = 0.0;
  double max_V1_drift = 0.0;
  MonitorWorst worst;
  double epsilon_used = 0.0;
  int init_retries = 0;
  double wall_time_seconds = 0.0;  // informational; excluded from the
                                   // byte-identical determinism guarantee
};

RunSummary make_summary(const FlowConfig& config, const RunResult& result,
                        double wall_time_seconds);
std::string summary_to_json(const RunSummary& summary);
void write_summary(const std::string& path, const RunSummary& summary);

}  // namespace capflow
