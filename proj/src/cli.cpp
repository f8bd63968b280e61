#include "capflow/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <memory>
#include <sstream>
#include <thread>

#include "capflow/caps.hpp"
#include "capflow/config.hpp"
#include "capflow/output.hpp"
#include "capflow/util.hpp"

namespace capflow::cli {

namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& path, const std::string& out_dir) {
  if (path.empty() || out_dir.empty() || fs::path(path).is_absolute()) {
    return path;
  }
  return (fs::path(out_dir) / path).string();
}

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

// Suffix a filename before its extension: flow.csv -> flow_theta120.csv.
std::string with_suffix(const std::string& path, const std::string& suffix) {
  fs::path p(path);
  fs::path stem = p.stem();
  stem += suffix;
  stem += p.extension();
  return (p.parent_path() / stem).string();
}

struct SimulateOutcome {
  int exit_code = kExitOk;
  std::string message;
  RunSummary summary;
  bool has_summary = false;
};

SimulateOutcome simulate_config(const FlowConfig& config) {
  SimulateOutcome outcome;
  try {
    const FlowRunConfig rc = config.to_run_config();  // validates angles etc.
    const auto t0 = std::chrono::steady_clock::now();

    std::unique_ptr<CsvWriter> csv;
    const Grid mesh_grid = Grid::build([&] {
      GridSpec g = rc.grid;
      g.n = rc.n;
      return g;
    }());
    long record_count = 0;
    // The CSV is opened at the first record, so a run that never starts
    // (config rejected, initial data inadmissible) leaves no partial file.
    RecordCallback on_record = [&](const QuermassRecord& rec,
                                   const FlowState& state) {
      if (!csv && !config.output.csv_path.empty()) {
        ensure_parent(config.output.csv_path);
        csv = std::make_unique<CsvWriter>(config.output.csv_path);
      }
      if (csv) csv->write(rec);
      if (!config.output.mesh_path.empty() && config.output.mesh_every > 0 &&
          record_count % config.output.mesh_every == 0) {
        std::ostringstream name;
        name << config.output.mesh_path << "_" << std::setfill('0')
             << std::setw(6) << record_count << ".obj";
        ensure_parent(name.str());
        write_obj(name.str(), mesh_grid, state.field,
                  config.output.mesh_sectors);
      }
      ++record_count;
    };

    const RunResult result = run(rc, on_record);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    outcome.summary = make_summary(config, result, wall);
    outcome.has_summary = true;
    if (!config.output.summary_path.empty()) {
      ensure_parent(config.output.summary_path);
      write_summary(config.output.summary_path, outcome.summary);
    }
    switch (result.reason.cause) {
      case StopCause::converged:
      case StopCause::time_limit:
        outcome.exit_code = kExitOk;
        break;
      case StopCause::monitor_violation:
        outcome.exit_code = kExitMonitor;
        break;
      case StopCause::mean_convexity_lost:
        outcome.exit_code = kExitMeanConvex;
        break;
    }
    outcome.message = std::string(to_string(result.reason.cause)) +
                      (result.reason.detail.empty()
                           ? ""
                           : ": " + result.reason.detail);
  } catch (const ConfigError& e) {
    outcome.exit_code = kExitConfig;
    outcome.message = e.what();
  } catch (const InadmissibleInitialData& e) {
    outcome.exit_code = kExitConfig;
    outcome.message = e.what();
  } catch (const std::invalid_argument& e) {
    outcome.exit_code = kExitConfig;
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = kExitFailure;
    outcome.message = e.what();
  }
  return outcome;
}

FlowConfig apply_out_dir(FlowConfig config, const std::string& out_dir) {
  config.output.csv_path = resolve(config.output.csv_path, out_dir);
  config.output.summary_path = resolve(config.output.summary_path, out_dir);
  config.output.mesh_path = resolve(config.output.mesh_path, out_dir);
  return config;
}

}  // namespace

int cmd_cap_info(double theta_degrees, double r, int n, std::ostream& out) {
  constexpr double kTol = 1e-8;
  try {
    const ContactAngle theta = ContactAngle::from_degrees(theta_degrees);
    const CapSpec spec(theta, r, n);
    const CapConstants a = cap_constants(spec);
    const CapConstants q = cap_constants_quadrature(spec);
    // Independent volume route for the quermassintegrals:
    // V1 = (n+1) b r^n and V2 = (n+1) b r^{n-1} with b from the volume
    // integral, against the surface-integral values.
    const double b_vol = b_theta_quadrature(n, theta);
    const double v1_vol = (n + 1.0) * b_vol * std::pow(r, n);
    const double v2_vol = (n + 1.0) * b_vol * std::pow(r, n - 1);

    struct Row {
      const char* name;
      double value;
      double check;
    };
    const Row rows[] = {
        {"b_theta", a.b_theta, b_vol},
        {"area", a.area, q.area},
        {"wetted_area", a.wetted_area, q.wetted_area},
        {"contact_length", a.contact_length, q.contact_length},
        {"total_H", a.total_H, q.total_H},
        {"V1", a.V1, v1_vol},
        {"V2", a.V2, v2_vol},
    };
    out << "capillary spherical cap: theta = " << theta_degrees
        << " deg, r = " << r << ", n = " << n << "\n";
    out << std::left << std::setw(16) << "quantity" << std::setw(24) << "value"
        << std::setw(24) << "cross-check" << "rel.diff\n";
    double worst = 0.0;
    for (const Row& row : rows) {
      const double denom = std::max(std::abs(row.value), 1e-300);
      const double diff = std::abs(row.value - row.check) / denom;
      worst = std::max(worst, diff);
      out << std::left << std::setw(16) << row.name << std::setw(24)
          << std::setprecision(15) << row.value << std::setw(24) << row.check
          << std::setprecision(3) << diff << "\n";
    }
    if (worst > kTol) {
      out << "FAIL: cross-check disagreement " << worst << " > " << kTol
          << "\n";
      return kExitFailure;
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    out << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::ostream& out) {
  FlowConfig config;
  try {
    config = apply_out_dir(load_config(config_path), out_dir);
  } catch (const ConfigError& e) {
    out << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  const SimulateOutcome outcome = simulate_config(config);
  if (outcome.exit_code == kExitConfig) {
    out << "config error: " << outcome.message << "\n";
    return outcome.exit_code;
  }
  out << "simulate: " << outcome.message << "\n";
  if (outcome.has_summary) {
    out << "  final t = " << outcome.summary.final_t
        << ", steps = " << outcome.summary.steps
        << ", r_predicted = " << outcome.summary.r_predicted
        << ", r_fitted = " << outcome.summary.r_fitted
        << ", distance = " << outcome.summary.final_distance_to_cap << "\n";
  }
  return outcome.exit_code;
}

int cmd_verify_inequality(const std::vector<double>& theta_degrees, int seeds,
                          double epsilon, int resolution, bool flow_after,
                          std::ostream& out) {
  if (seeds < 0 || resolution < 16) {
    out << "error: seeds must be >= 0 and resolution >= 16\n";
    return kExitConfig;
  }
  std::vector<ContactAngle> angles;
  try {
    for (double deg : theta_degrees) {
      angles.push_back(ContactAngle::from_degrees(deg));
    }
  } catch (const std::invalid_argument& e) {
    out << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  out << "theta_deg,seed,epsilon_used,retries,deficit,deficit_norm,status";
  if (flow_after) out << ",deficit_norm_final";
  out << "\n";

  constexpr double kTol = 1e-3;
  bool failed = false;
  int produced = 0;
  for (size_t a = 0; a < angles.size(); ++a) {
    GridSpec gspec;
    gspec.n = 2;
    gspec.n_beta = resolution;
    gspec.axisymmetric = true;
    const Grid grid = Grid::build(gspec);
    for (int seed = 0; seed < seeds; ++seed) {
      InitSpec init;
      init.kind = InitSpec::Kind::perturbed_cap;
      init.epsilon = epsilon;
      init.seed = static_cast<std::uint64_t>(seed);
      out << theta_degrees[a] << "," << seed << ",";
      try {
        const InitialData data = make_initial(grid, init, angles[a]);
        const StencilField st = differentiate(grid, data.field, angles[a]);
        const GeometrySnapshot snap = snapshot(grid, data.field, st, angles[a]);
        const QuermassRecord rec = integrate(grid, snap, st, angles[a]);
        out << data.report.epsilon_used << "," << data.report.retries_used
            << "," << rec.deficit << "," << rec.deficit_norm << ",ok";
        if (rec.deficit_norm < -kTol) failed = true;
        if (flow_after) {
          FlowRunConfig rc{angles[a], 2, gspec, SteppingSpec{},
                           MonitorPolicy{}, init};
          const RunResult result = run(rc);
          out << "," << result.history.back().deficit_norm;
          if (result.history.back().deficit_norm < -kTol) failed = true;
        }
        out << "\n";
        ++produced;
      } catch (const InadmissibleInitialData& e) {
        out << epsilon << ",-,-,-,skipped: " << e.what() << "\n";
      }
    }
  }
  out << "# " << produced << " rows, tolerance " << kTol << ", "
      << (failed ? "FAIL" : "PASS") << "\n";
  return failed ? kExitFailure : kExitOk;
}

int cmd_sweep(const std::string& config_path,
              const std::vector<double>& theta_degrees, int workers,
              const std::string& out_dir, std::ostream& out) {
  if (theta_degrees.empty()) {
    out << "error: sweep needs at least one theta\n";
    return kExitConfig;
  }
  FlowConfig base;
  try {
    base = apply_out_dir(load_config(config_path), out_dir);
    for (double deg : theta_degrees) {
      ContactAngle::from_degrees(deg);  // validate the whole list up front
    }
  } catch (const ConfigError& e) {
    out << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    out << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  std::vector<FlowConfig> configs;
  for (double deg : theta_degrees) {
    FlowConfig cfg = base;
    cfg.theta_degrees = deg;
    std::ostringstream suffix;
    suffix << "_theta" << deg;
    cfg.output.csv_path = with_suffix(base.output.csv_path, suffix.str());
    cfg.output.summary_path =
        with_suffix(base.output.summary_path, suffix.str());
    if (!base.output.mesh_path.empty()) {
      cfg.output.mesh_path = base.output.mesh_path + suffix.str();
    }
    configs.push_back(std::move(cfg));
  }

  std::vector<SimulateOutcome> outcomes(configs.size());
  std::atomic<size_t> next{0};
  const int pool = std::max(1, std::min<int>(workers, configs.size()));
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (int w = 0; w < pool; ++w) {
    threads.emplace_back([&] {
      for (size_t idx = next.fetch_add(1); idx < configs.size();
           idx = next.fetch_add(1)) {
        outcomes[idx] = simulate_config(configs[idx]);
      }
    });
  }
  for (std::thread& t : threads) t.join();

  out << "theta_deg,stop_reason,r_predicted,r_fitted,r_rel_error,"
         "final_deficit_norm,exit\n";
  int exit_code = kExitOk;
  for (size_t i = 0; i < configs.size(); ++i) {
    const SimulateOutcome& o = outcomes[i];
    out << theta_degrees[i] << ",";
    if (o.has_summary) {
      const double rel =
          std::abs(o.summary.r_fitted - o.summary.r_predicted) /
          o.summary.r_predicted;
      out << o.summary.stop_reason << "," << o.summary.r_predicted << ","
          << o.summary.r_fitted << "," << rel << ","
          << o.summary.final_deficit_norm << "," << o.exit_code << "\n";
    } else {
      out << "error: " << o.message << ",,,,," << o.exit_code << "\n";
    }
    if (o.exit_code != kExitOk) exit_code = o.exit_code;
  }
  return exit_code;
}

}  // namespace capflow::cli
