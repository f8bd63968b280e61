#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace capflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;      // verification or internal failure
inline constexpr int kExitConfig = 2;       // bad config / bad arguments
inline constexpr int kExitMonitor = 3;      // monitor abort
inline constexpr int kExitMeanConvex = 4;   // mean convexity lost

// Prints cap constants with an independent cross-check route per row;
// nonzero exit if any pair disagrees beyond 1e-8 relative.
int cmd_cap_info(double theta_degrees, double r, int n, std::ostream& out);

// Runs one simulation from a JSON config; writes the time-series CSV, the
// summary JSON, and OBJ meshes per config.  Relative output paths are placed
// under out_dir when it is non-empty.
int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::ostream& out);

// Generates admissible random initial data per (theta, seed), reports the
// Minkowski deficit at t = 0 (and after flowing when flow_after), and fails
// if any normalized deficit < -1e-3.
int cmd_verify_inequality(const std::vector<double>& theta_degrees, int seeds,
                          double epsilon, int resolution, bool flow_after,
                          std::ostream& out);

// Runs independent simulations for each theta in parallel and aggregates
// fitted vs predicted limit radii.
int cmd_sweep(const std::string& config_path,
              const std::vector<double>& theta_degrees, int workers,
              const std::string& out_dir, std::ostream& out);

}  // namespace capflow::cli
