#include "capflow/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace capflow {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) {
      throw ConfigError("unknown key \"" + key + "\" in " + where);
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& target) {
  if (!obj.contains(key)) return;
  try {
    target = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

FlowConfig from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown(j, "config", {"theta_degrees", "n", "grid", "stepping",
                               "monitors", "init", "output"});
  FlowConfig cfg;
  read(j, "theta_degrees", cfg.theta_degrees);
  read(j, "n", cfg.n);

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    reject_unknown(g, "grid", {"n_beta", "n_xi", "axisymmetric"});
    read(g, "n_beta", cfg.grid.n_beta);
    read(g, "n_xi", cfg.grid.n_xi);
    read(g, "axisymmetric", cfg.grid.axisymmetric);
  }
  if (j.contains("stepping")) {
    const json& s = j.at("stepping");
    reject_unknown(s, "stepping",
                   {"safety", "t_max", "tol_stationary", "record_interval"});
    read(s, "safety", cfg.stepping.safety);
    read(s, "t_max", cfg.stepping.t_max);
    read(s, "tol_stationary", cfg.stepping.tol_stationary);
    read(s, "record_interval", cfg.stepping.record_interval);
  }
  if (j.contains("monitors")) {
    const json& m = j.at("monitors");
    reject_unknown(m, "monitors",
                   {"tol_V1_drift", "tol_V2_increase", "tol_monitor",
                    "tol_containment", "action"});
    read(m, "tol_V1_drift", cfg.monitors.tol_V1_drift);
    read(m, "tol_V2_increase", cfg.monitors.tol_V2_increase);
    read(m, "tol_monitor", cfg.monitors.tol_monitor);
    read(m, "tol_containment", cfg.monitors.tol_containment);
    if (m.contains("action")) {
      const std::string action = m.at("action").get<std::string>();
      if (action == "abort") {
        cfg.monitors.abort_on_violation = true;
      } else if (action == "warn") {
        cfg.monitors.abort_on_violation = false;
      } else {
        throw ConfigError("monitors.action must be \"warn\" or \"abort\"");
      }
    }
  }
  if (j.contains("init")) {
    const json& in = j.at("init");
    reject_unknown(in, "init", {"kind", "r", "epsilon", "modes", "seed",
                               "cutoff_delta", "h_min_factor"});
    if (in.contains("kind")) {
      const std::string kind = in.at("kind").get<std::string>();
      if (kind == "cap") {
        cfg.init.kind = InitSpec::Kind::cap;
      } else if (kind == "perturbed_cap") {
        cfg.init.kind = InitSpec::Kind::perturbed_cap;
      } else {
        throw ConfigError("init.kind must be \"cap\" or \"perturbed_cap\"");
      }
    }
    read(in, "r", cfg.init.r);
    read(in, "epsilon", cfg.init.epsilon);
    read(in, "seed", cfg.init.seed);
    read(in, "cutoff_delta", cfg.init.cutoff_delta);
    read(in, "h_min_factor", cfg.init.h_min_factor);
    if (in.contains("modes")) {
      cfg.init.modes.clear();
      const json& modes = in.at("modes");
      if (!modes.is_array()) throw ConfigError("init.modes must be an array");
      for (const json& m : modes) {
        if (!m.is_array() || m.size() != 2) {
          throw ConfigError("each init.modes entry must be [frequency, weight]");
        }
        cfg.init.modes.emplace_back(m.at(0).get<int>(), m.at(1).get<double>());
      }
    }
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    reject_unknown(o, "output", {"csv_path", "summary_path", "mesh_path",
                                 "mesh_every", "mesh_sectors"});
    read(o, "csv_path", cfg.output.csv_path);
    read(o, "summary_path", cfg.output.summary_path);
    read(o, "mesh_path", cfg.output.mesh_path);
    read(o, "mesh_every", cfg.output.mesh_every);
    read(o, "mesh_sectors", cfg.output.mesh_sectors);
  }
  return cfg;
}

}  // namespace

FlowRunConfig FlowConfig::to_run_config() const {
  try {
    FlowRunConfig rc{ContactAngle::from_degrees(theta_degrees), n,
                     grid,       stepping,
                     monitors,   init};
    rc.grid.n = n;
    return rc;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

FlowConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

FlowConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

RunSummary make_summary(const FlowConfig& config, const RunResult& result,
                        double wall_time_seconds) {
  RunSummary s;
  s.stop_reason = to_string(result.reason.cause);
  s.stop_detail = result.reason.detail;
  s.theta_degrees = config.theta_degrees;
  s.n = config.n;
  s.final_t = result.final_state.t;
  s.steps = result.final_state.step_count;
  s.r_predicted = result.r_predicted;
  s.r_fitted = result.r_fitted;
  if (!result.history.empty()) {
    s.final_deficit_norm = result.history.back().deficit_norm;
    s.final_sup_G = result.history.back().sup_G;
  }
  s.final_distance_to_cap = result.final_distance;
  s.max_V1_drift = result.worst.V1_drift;
  s.worst = result.worst;
  s.epsilon_used = result.init_report.epsilon_used;
  s.init_retries = result.init_report.retries_used;
  s.wall_time_seconds = wall_time_seconds;
  return s;
}

std::string summary_to_json(const RunSummary& s) {
  json j;
  j["schema"] = "capflow.summary.v1";
  j["csv_schema"] = "capflow.timeseries.v1";
  j["stop_reason"] = s.stop_reason;
  j["stop_detail"] = s.stop_detail;
  j["theta_degrees"] = s.theta_degrees;
  j["n"] = s.n;
  j["final_t"] = s.final_t;
  j["steps"] = s.steps;
  j["r_predicted"] = s.r_predicted;
  j["r_fitted"] = s.r_fitted;
  j["final_deficit_norm"] = s.final_deficit_norm;
  j["final_sup_G"] = s.final_sup_G;
  j["final_distance_to_cap"] = s.final_distance_to_cap;
  j["max_V1_drift"] = s.max_V1_drift;
  j["monitors"] = {
      {"V2_step_increase", s.worst.V2_step_increase},
      {"ubar_ratio", s.worst.ubar_ratio},
      {"H_ratio", s.worst.H_ratio},
      {"P_ratio", s.worst.P_ratio},
      {"gauge_min_ratio", s.worst.gauge_min_ratio},
      {"gauge_max_ratio", s.worst.gauge_max_ratio},
  };
  j["init"] = {
      {"epsilon_used", s.epsilon_used},
      {"retries_used", s.init_retries},
  };
  j["wall_time_seconds"] = s.wall_time_seconds;
  return j.dump(2) + "\n";
}

void write_summary(const std::string& path, const RunSummary& summary) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write summary: " + path);
  out << summary_to_json(summary);
}

}  // namespace capflow
