#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capflow/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"capflow: capillary inverse-mean-curvature-type flow in the "
               "half-space"};
  app.require_subcommand(1);

  // cap-info
  double theta = 90.0, r = 1.0;
  int n = 2;
  CLI::App* cap_info =
      app.add_subcommand("cap-info", "print spherical-cap constants");
  cap_info->add_option("--theta", theta, "contact angle in degrees")
      ->required();
  cap_info->add_option("--r", r, "cap radius")->default_val(1.0);
  cap_info->add_option("--n", n, "surface dimension")->default_val(2);

  // simulate
  std::string config_path, out_dir;
  CLI::App* simulate =
      app.add_subcommand("simulate", "run one flow from a JSON config");
  simulate->add_option("--config", config_path, "config JSON path")
      ->required();
  simulate->add_option("--out", out_dir,
                       "directory for relative output paths");

  // verify-inequality
  std::vector<double> theta_list = {30.0, 60.0, 90.0, 120.0, 150.0};
  int seeds = 20;
  double epsilon = 0.05;
  int resolution = 256;
  bool flow_after = false;
  CLI::App* verify = app.add_subcommand(
      "verify-inequality",
      "check the Minkowski deficit on random admissible initial data");
  verify->add_option("--theta", theta_list, "contact angles in degrees")
      ->delimiter(',');
  verify->add_option("--seeds", seeds, "seeds per angle")->default_val(20);
  verify->add_option("--epsilon", epsilon, "perturbation amplitude")
      ->default_val(0.05);
  verify->add_option("--resolution", resolution, "n_beta of the grid")
      ->default_val(256);
  verify->add_flag("--flow", flow_after,
                   "also flow each datum and report the final deficit");

  // sweep
  std::string sweep_config, sweep_out;
  std::vector<double> sweep_thetas;
  int workers = 4;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run one simulation per theta in parallel and aggregate");
  sweep->add_option("--config", sweep_config, "base config JSON path")
      ->required();
  sweep->add_option("--theta", sweep_thetas, "contact angles in degrees")
      ->delimiter(',')
      ->required();
  sweep->add_option("--workers", workers, "max parallel runs")->default_val(4);
  sweep->add_option("--out", sweep_out, "directory for relative output paths");

  CLI11_PARSE(app, argc, argv);

  if (cap_info->parsed()) {
    return capflow::cli::cmd_cap_info(theta, r, n, std::cout);
  }
  if (simulate->parsed()) {
    return capflow::cli::cmd_simulate(config_path, out_dir, std::cout);
  }
  if (verify->parsed()) {
    return capflow::cli::cmd_verify_inequality(theta_list, seeds, epsilon,
                                               resolution, flow_after,
                                               std::cout);
  }
  if (sweep->parsed()) {
    return capflow::cli::cmd_sweep(sweep_config, sweep_thetas, workers,
                                   sweep_out, std::cout);
  }
  return capflow::cli::kExitConfig;
}
