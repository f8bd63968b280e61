// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Run via `ctest --test-dir build -R acceptance` or directly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "capflow/caps.hpp"
#include "capflow/flow.hpp"

using namespace capflow;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
};

int g_failures = 0;

template <typename F>
void criterion(int id, const char* name, F&& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail += std::string(" exception: ") + e.what();
  }
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("[%s] criterion %d (%s):%s (%.2f s)\n",
              out.pass ? "PASS" : "FAIL", id, name, out.detail.c_str(),
              out.seconds);
  std::fflush(stdout);
  if (!out.pass) ++g_failures;
}

void require(Outcome& out, bool ok, const std::string& what) {
  if (!ok) {
    out.pass = false;
    out.detail += " FAILED{" + what + "}";
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

const std::vector<double> kAngles = {30.0, 60.0, 90.0, 120.0, 150.0};

QuermassRecord integrate_cap(const Grid& grid, const ContactAngle& theta,
                             double r) {
  const CapSpec spec(theta, r, grid.n());
  RadialField f;
  f.phi.resize(grid.cells());
  for (int i = 0; i < grid.n_beta(); ++i) {
    const double v = std::log(cap_radial(spec, grid.beta(i)));
    for (int j = 0; j < grid.n_xi(); ++j) f.phi[grid.index(i, j)] = v;
  }
  const StencilField st = differentiate(grid, f, theta);
  const GeometrySnapshot s = snapshot(grid, f, st, theta);
  return integrate(grid, s, st, theta);
}

Grid axisym_grid(int n_beta) {
  GridSpec g;
  g.n = 2;
  g.n_beta = n_beta;
  g.axisymmetric = true;
  return Grid::build(g);
}

}  // namespace

int main() {
  std::printf("capflow acceptance suite\n");

  // Shared state: the convergence runs feed criteria 4, 5 and 6.
  std::vector<RunResult> convergence_runs;

  criterion(1, "cap oracle suite", [](Outcome& out) {
    const Grid grid = axisym_grid(256);
    for (double deg : kAngles) {
      const ContactAngle theta = ContactAngle::from_degrees(deg);
      const QuermassRecord rec = integrate_cap(grid, theta, 1.0);
      const CapConstants k = cap_constants(CapSpec(theta, 1.0, 2));
      const double ev1 = std::abs(rec.V1 - k.V1) / k.V1;
      const double ev2 = std::abs(rec.V2 - k.V2) / k.V2;
      const double eh = std::abs(rec.total_H - k.total_H) / k.total_H;
      const double ec = std::abs(rec.contact_length - k.contact_length) /
                        k.contact_length;
      require(out, ev1 <= 1e-3, "V1 " + fmt(ev1) + " at " + fmt(deg));
      require(out, ev2 <= 1e-3, "V2 " + fmt(ev2) + " at " + fmt(deg));
      require(out, eh <= 1e-3, "total_H " + fmt(eh) + " at " + fmt(deg));
      require(out, ec <= 1e-3, "contact " + fmt(ec) + " at " + fmt(deg));
    }
    out.detail += " V1/V2/total_H/contact within 1e-3 of closed forms";
  });

  criterion(2, "equality case deficit", [](Outcome& out) {
    const Grid g256 = axisym_grid(256);
    const Grid g512 = axisym_grid(512);
    double worst256 = 0.0, worst512 = 0.0;
    for (double deg : kAngles) {
      const ContactAngle theta = ContactAngle::from_degrees(deg);
      worst256 = std::max(
          worst256, std::abs(integrate_cap(g256, theta, 1.0).deficit_norm));
      worst512 = std::max(
          worst512, std::abs(integrate_cap(g512, theta, 1.0).deficit_norm));
    }
    require(out, worst256 <= 1e-3, "|deficit_norm|@256 = " + fmt(worst256));
    require(out, worst512 <= 5e-4, "|deficit_norm|@512 = " + fmt(worst512));
    out.detail += " worst @256 " + fmt(worst256) + ", @512 " + fmt(worst512);
  });

  criterion(3, "stationarity of caps", [](Outcome& out) {
    const double db = (kPi / 2.0) / 128;
    double worst_G = 0.0, worst_d = 0.0;
    for (double deg : kAngles) {
      const ContactAngle theta = ContactAngle::from_degrees(deg);
      FlowRunConfig cfg{theta, 2, GridSpec{}, SteppingSpec{}, MonitorPolicy{},
                        InitSpec{}};
      cfg.grid.n_beta = 128;
      cfg.init.kind = InitSpec::Kind::cap;
      cfg.init.r = 1.37;
      // Sub-rounding tolerance so the run genuinely steps across [0,1].
      cfg.stepping.t_max = 1.0;
      cfg.stepping.tol_stationary = 1e-300;
      cfg.stepping.record_interval = 0.05;
      GridSpec gspec = cfg.grid;
      gspec.n = cfg.n;
      const Grid grid = Grid::build(gspec);
      double worst_dist = 0.0;
      const RunResult res = run(cfg, [&](const QuermassRecord&,
                                         const FlowState& state) {
        worst_dist = std::max(
            worst_dist,
            distance_to_cap(grid, state.field, theta, cfg.init.r));
      });
      for (const QuermassRecord& rec : res.history) {
        worst_G = std::max(worst_G, rec.sup_G);
      }
      worst_d = std::max(worst_d, worst_dist);
      require(out, res.reason.cause == StopCause::time_limit ||
                       res.reason.cause == StopCause::converged,
              std::string("stop ") + to_string(res.reason.cause));
    }
    require(out, worst_G <= 5.0 * db * db,
            "sup|G| " + fmt(worst_G) + " > 5 dbeta^2 " + fmt(5.0 * db * db));
    require(out, worst_d <= 1e-3, "distance " + fmt(worst_d));
    out.detail +=
        " sup|G| " + fmt(worst_G) + " (bound " + fmt(5.0 * db * db) + ")";
  });

  criterion(4, "convergence of perturbed caps",
            [&convergence_runs](Outcome& out) {
    int seed = 7;
    for (double deg : kAngles) {
      FlowRunConfig cfg{ContactAngle::from_degrees(deg), 2, GridSpec{},
                        SteppingSpec{}, MonitorPolicy{}, InitSpec{}};
      cfg.grid.n_beta = 128;
      cfg.init.kind = InitSpec::Kind::perturbed_cap;
      cfg.init.epsilon = 0.05;
      cfg.init.seed = seed++;
      cfg.stepping.t_max = 200.0;
      cfg.stepping.tol_stationary = 1e-7;
      const auto t0 = std::chrono::steady_clock::now();
      RunResult res = run(cfg);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      require(out, res.reason.cause == StopCause::converged,
              "theta " + fmt(deg) + " stopped: " +
                  to_string(res.reason.cause));
      require(out, res.final_distance <= 1e-2,
              "theta " + fmt(deg) + " distance " + fmt(res.final_distance));
      require(out, secs < 300.0, "theta " + fmt(deg) + " runtime " + fmt(secs));
      convergence_runs.push_back(std::move(res));
    }
    if (!convergence_runs.empty()) {
      double worst = 0.0;
      for (const RunResult& r : convergence_runs) {
        worst = std::max(worst, r.final_distance);
      }
      out.detail += " worst distance " + fmt(worst);
    }
  });

  criterion(5, "V1 conservation and V2 monotonicity",
            [&convergence_runs](Outcome& out) {
    require(out, convergence_runs.size() == kAngles.size(),
            "missing convergence runs");
    double worst_drift = 0.0, worst_inc = 0.0;
    for (const RunResult& res : convergence_runs) {
      worst_drift = std::max(worst_drift, res.worst.V1_drift);
      const double v2_0 = std::abs(res.history.front().V2);
      for (size_t k = 1; k < res.history.size(); ++k) {
        worst_inc = std::max(
            worst_inc, (res.history[k].V2 - res.history[k - 1].V2) / v2_0);
      }
    }
    require(out, worst_drift <= 1e-3, "V1 drift " + fmt(worst_drift));
    require(out, worst_inc <= 1e-8, "V2 step increase " + fmt(worst_inc));
    out.detail += " V1 drift " + fmt(worst_drift) + ", V2 step increase " +
                  fmt(worst_inc);
  });

  criterion(6, "maximum-principle monitors",
            [&convergence_runs](Outcome& out) {
    require(out, convergence_runs.size() == kAngles.size(),
            "missing convergence runs");
    for (const RunResult& res : convergence_runs) {
      require(out, res.worst.ubar_ratio >= 1.0 - 1e-3,
              "min ubar ratio " + fmt(res.worst.ubar_ratio));
      require(out, res.worst.H_ratio <= 1.0 + 1e-3,
              "max H ratio " + fmt(res.worst.H_ratio));
      require(out, res.worst.P_ratio >= 1.0 - 1e-3,
              "min P ratio " + fmt(res.worst.P_ratio));
      require(out, res.worst.gauge_min_ratio >= 1.0 - 1e-3,
              "gauge_min ratio " + fmt(res.worst.gauge_min_ratio));
      require(out, res.worst.gauge_max_ratio <= 1.0 + 1e-3,
              "gauge_max ratio " + fmt(res.worst.gauge_max_ratio));
    }
    out.detail += " ubar/H/P and gauge barriers within 1e-3";
  });

  criterion(7, "inequality sweep at t = 0", [](Outcome& out) {
    const Grid grid = axisym_grid(256);
    double worst = 1e300;
    int admissible = 0;
    for (double deg : kAngles) {
      const ContactAngle theta = ContactAngle::from_degrees(deg);
      for (std::uint64_t s = 0; s < 20; ++s) {
        InitSpec init;
        init.kind = InitSpec::Kind::perturbed_cap;
        init.epsilon = 0.05;
        init.seed = s;
        const InitialData data = make_initial(grid, init, theta);
        const StencilField st = differentiate(grid, data.field, theta);
        const GeometrySnapshot snap = snapshot(grid, data.field, st, theta);
        const QuermassRecord rec = integrate(grid, snap, st, theta);
        worst = std::min(worst, rec.deficit_norm);
        ++admissible;
      }
    }
    require(out, admissible == 100, "only " + fmt(admissible) + " data");
    require(out, worst >= -1e-3, "min deficit_norm " + fmt(worst));
    out.detail += " 100 admissible data, min deficit_norm " + fmt(worst);
  });

  criterion(8, "order of accuracy on caps", [](Outcome& out) {
    const ContactAngle theta = ContactAngle::from_degrees(120.0);
    auto errors = [&](int n_beta, double* h_err, double* v1_err) {
      const Grid grid = axisym_grid(n_beta);
      const CapSpec spec(theta, 1.0, 2);
      RadialField f;
      f.phi.resize(grid.cells());
      for (int i = 0; i < grid.n_beta(); ++i) {
        f.phi[i] = std::log(cap_radial(spec, grid.beta(i)));
      }
      const StencilField st = differentiate(grid, f, theta);
      const GeometrySnapshot s = snapshot(grid, f, st, theta);
      double he = 0.0;
      for (int i = 0; i < grid.cells(); ++i) {
        he = std::max(he, std::abs(s.H[i] - 2.0));
      }
      *h_err = he;
      const QuermassRecord rec = integrate(grid, s, st, theta);
      *v1_err = std::abs(rec.V1 - cap_constants(spec).V1);
    };
    double h128, v128, h256, v256;
    errors(128, &h128, &v128);
    errors(256, &h256, &v256);
    const double rh = h128 / h256;
    const double rv = v128 / v256;
    require(out, rh >= 3.2 && rh <= 4.8, "H error ratio " + fmt(rh));
    require(out, rv >= 3.2 && rv <= 4.8, "V1 error ratio " + fmt(rv));
    out.detail += " H ratio " + fmt(rh) + ", V1 ratio " + fmt(rv);
  });

  criterion(9, "2D non-axisymmetric smoke", [](Outcome& out) {
    FlowRunConfig cfg{ContactAngle::from_degrees(120.0), 2, GridSpec{},
                      SteppingSpec{}, MonitorPolicy{}, InitSpec{}};
    cfg.grid.axisymmetric = false;
    cfg.grid.n_beta = 128;
    cfg.grid.n_xi = 64;
    cfg.init.kind = InitSpec::Kind::perturbed_cap;
    cfg.init.epsilon = 0.02;
    cfg.init.modes = {{2, 1.0}};
    cfg.init.seed = 5;
    cfg.stepping.t_max = 200.0;
    cfg.stepping.tol_stationary = 1e-7;
    cfg.stepping.record_interval = 0.25;
    const RunResult res = run(cfg);
    require(out, res.reason.cause == StopCause::converged,
            std::string("stop ") + to_string(res.reason.cause));
    require(out, res.final_distance <= 2e-2,
            "distance " + fmt(res.final_distance));
    out.detail += " distance " + fmt(res.final_distance) + ", steps " +
                  fmt(static_cast<double>(res.final_state.step_count));
  });

  if (g_failures > 0) {
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("acceptance: all criteria passed\n");
  return 0;
}
