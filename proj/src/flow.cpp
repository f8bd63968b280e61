#include "capflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "capflow/caps.hpp"
#include "capflow/util.hpp"

namespace capflow {

const char* to_string(StopCause cause) {
  switch (cause) {
    case StopCause::converged: return "converged";
    case StopCause::time_limit: return "time_limit";
    case StopCause::monitor_violation: return "monitor_violation";
    case StopCause::mean_convexity_lost: return "mean_convexity_lost";
  }
  return "unknown";
}

MeanConvexityLost::MeanConvexityLost(int cell_in, double H_in)
    : std::runtime_error(
          "mean convexity lost: H = " + std::to_string(H_in) + " at cell " +
          std::to_string(cell_in) +
          "; the flow is only defined for H > 0, and the continuum theorem "
          "preserves mean convexity, so a discrete loss usually means the "
          "grid under-resolves the data"),
      cell(cell_in),
      H_value(H_in) {}

namespace {

// Raw discrete G with the formula cross-checks; well-balancing is applied
// on top by the public entry points.
std::vector<double> raw_rhs(const Grid& grid, const StencilField& st,
                            const GeometrySnapshot& snap,
                            const ContactAngle& theta) {
  const int cells = grid.cells();
  const int n = grid.n();
  const int nxi = grid.n_xi();
  const double ct = theta.cos();

  if (!snap.mean_convex) {
    int worst = 0;
    for (int k = 1; k < cells; ++k) {
      if (snap.H[k] < snap.H[worst]) worst = k;
    }
    throw MeanConvexityLost(worst, snap.H[worst]);
  }

  std::vector<double> G(cells);
  double cross_err = 0.0;
  double identity_err = 0.0;
  for (int i = 0; i < grid.n_beta(); ++i) {
    const double sb = grid.sin_beta(i);
    const double cb = grid.cos_beta(i);
    for (int j = 0; j < nxi; ++j) {
      const int k = grid.index(i, j);
      const double v2 = 1.0 + st.grad_sq[k];
      // Scalar-PDE route: G = n v^2 (1 - (cos/v)(cos b + sin b phi_b)) / D - 1
      // with D = n - (sigma^{ij} - phi^i phi^j/v^2) phi_{;ij} = e^phi v H.
      const double denom = snap.rho[k] * snap.v[k] * snap.H[k];
      const double factor = 1.0 - ct / snap.v[k] * (cb + sb * st.d_beta[k]);
      const double g_pde = n * v2 * factor / denom - 1.0;
      // Geometric route: G = n(1 + cos(theta)<nu,e>)/(u H) - 1.
      const double g_geo =
          n * (1.0 + ct * snap.nu_e[k]) / (snap.u[k] * snap.H[k]) - 1.0;
      cross_err = std::max(
          cross_err, std::abs(g_pde - g_geo) / std::max(1.0, std::abs(g_pde)));
      // Normal-speed tie-in: f = u G pointwise.
      identity_err = std::max(
          identity_err, std::abs(snap.f[k] - snap.u[k] * g_pde) /
                            std::max({1.0, std::abs(snap.f[k]), snap.u[k]}));
      G[k] = g_pde;
    }
  }
  if (cross_err > 1e-12) {
    throw std::logic_error("G formula cross-check failed: " +
                           std::to_string(cross_err));
  }
  if (identity_err > 1e-12) {
    throw std::logic_error("f = u G identity failed: " +
                           std::to_string(identity_err));
  }
  return G;
}

}  // namespace

std::vector<double> equilibrium_residual(const Grid& grid,
                                         const ContactAngle& theta) {
  const RadialField cap = cap_field(grid, theta, 1.0);
  const StencilField st = differentiate(grid, cap, theta);
  const GeometrySnapshot snap = snapshot(grid, cap, st, theta);
  return raw_rhs(grid, st, snap, theta);
}

std::vector<double> rhs(const Grid& grid, const StencilField& st,
                        const GeometrySnapshot& snap, const ContactAngle& theta,
                        const std::vector<double>& residual) {
  std::vector<double> G = raw_rhs(grid, st, snap, theta);
  for (size_t k = 0; k < G.size(); ++k) G[k] -= residual[k];
  return G;
}

std::vector<double> rhs(const Grid& grid, const RadialField& field,
                        const ContactAngle& theta) {
  const StencilField st = differentiate(grid, field, theta);
  const GeometrySnapshot snap = snapshot(grid, field, st, theta);
  return rhs(grid, st, snap, theta, equilibrium_residual(grid, theta));
}

double stable_dt(const Grid& grid, const StencilField& st,
                 const GeometrySnapshot& snap, const std::vector<double>& G,
                 double safety) {
  if (!(safety > 0.0 && safety <= 1.0)) {
    throw std::invalid_argument("safety factor must lie in (0, 1]");
  }
  const int n = grid.n();
  const int nxi = grid.n_xi();
  const double h = grid.dbeta();
  const double dxi = grid.dxi();

  double inv_dt = 0.0;
  for (int i = 0; i < grid.n_beta(); ++i) {
    const double sb = grid.sin_beta(i);
    const double cotb = grid.cot_beta(i);
    int m_eff = 0;
    double lam_xi = 0.0, sym_xi = 0.0;
    if (!grid.axisymmetric()) {
      m_eff = polar_mode_cap(grid, i);
      const double arg = m_eff * dxi;
      lam_xi = (2.0 - 2.0 * std::cos(arg)) / (dxi * dxi);
      sym_xi = (arg >= kPi / 2.0 ? 1.0 : std::sin(arg)) / dxi;
    }
    for (int j = 0; j < nxi; ++j) {
      const int k = grid.index(i, j);
      const double v2 = 1.0 + st.grad_sq[k];
      const double denom = snap.rho[k] * snap.v[k] * snap.H[k];
      const double coef = (G[k] + 1.0) / denom;  // multiplies A^{ij} phi_{;ij}
      double cell;
      if (grid.axisymmetric()) {
        const double a_bb = 1.0 / v2;
        cell = 4.0 * coef * a_bb / (h * h) +
               2.0 * coef * (n - 1) * std::abs(cotb) / h;
      } else {
        const double sb2 = sb * sb;
        const double db = st.d_beta[k];
        const double dx = st.d_xi[k];
        const double a_bb = 1.0 - db * db / v2;
        const double a_bx = std::abs(db * dx) / (v2 * sb2);
        const double a_xx = (1.0 - dx * dx / (v2 * sb2)) / sb2;
        cell = coef * (a_bb * 4.0 / (h * h) + a_xx * lam_xi +
                       2.0 * a_bx * (2.0 / h) * sym_xi) +
               2.0 * coef * std::abs(cotb) / h +
               2.0 * (2.0 * coef * a_bx * std::abs(cotb)) * sym_xi;
      }
      inv_dt = std::max(inv_dt, cell);
    }
  }
  return 2.0 * safety / inv_dt;
}

double stable_dt(const Grid& grid, const RadialField& field,
                 const ContactAngle& theta, double safety) {
  const StencilField st = differentiate(grid, field, theta);
  const GeometrySnapshot snap = snapshot(grid, field, st, theta);
  const std::vector<double> G =
      rhs(grid, st, snap, theta, equilibrium_residual(grid, theta));
  return stable_dt(grid, st, snap, G, safety);
}

namespace {

class Stepper {
 public:
  Stepper(const Grid& grid, const ContactAngle& theta)
      : grid_(grid),
        filter_(grid),
        residual_(equilibrium_residual(grid, theta)) {}

  const std::vector<double>& residual() const { return residual_; }

  StepResult advance(const FlowState& state, const ContactAngle& theta,
                     double dt) const {
    const StencilField st = differentiate(grid_, state.field, theta);
    const GeometrySnapshot snap = snapshot(grid_, state.field, st, theta);
    const std::vector<double> G = rhs(grid_, st, snap, theta, residual_);
    double sup = 0.0;
    for (double g : G) sup = std::max(sup, std::abs(g));
    return advance_with_stage1(state, theta, dt, G, sup);
  }

  StepResult advance_with_stage1(const FlowState& state,
                                 const ContactAngle& theta, double dt,
                                 const std::vector<double>& G1,
                                 double sup_G) const {
    if (dt == 0.0) return {state, sup_G};
    const int cells = grid_.cells();
    RadialField star;
    star.phi.resize(cells);
    for (int k = 0; k < cells; ++k) {
      star.phi[k] = state.field.phi[k] + dt * G1[k];
    }
    star.time = state.t + dt;
    filter_.apply(star.phi);

    const StencilField st2 = differentiate(grid_, star, theta);
    const GeometrySnapshot snap2 = snapshot(grid_, star, st2, theta);
    const std::vector<double> G2 = rhs(grid_, st2, snap2, theta, residual_);

    FlowState out;
    out.field.phi.resize(cells);
    for (int k = 0; k < cells; ++k) {
      out.field.phi[k] = state.field.phi[k] + 0.5 * dt * (G1[k] + G2[k]);
    }
    filter_.apply(out.field.phi);
    out.t = state.t + dt;
    out.field.time = out.t;
    out.last_dt = dt;
    out.step_count = state.step_count + 1;
    return {std::move(out), sup_G};
  }

 private:
  const Grid& grid_;
  PolarFilter filter_;
  std::vector<double> residual_;
};

double fitted_radius(const Grid& grid, const GeometrySnapshot& snap,
                     const ContactAngle& theta) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < grid.n_beta(); ++i) {
    const double w = grid.weight(i);
    const double cb = grid.cos_beta(i);
    for (int j = 0; j < grid.n_xi(); ++j) {
      const int k = grid.index(i, j);
      num += w * cap_gauge(snap.rho[k], snap.rho[k] * cb, theta);
      den += w;
    }
  }
  return num / den;
}

}  // namespace

StepResult step(const Grid& grid, const FlowState& state,
                const ContactAngle& theta, double dt) {
  return Stepper(grid, theta).advance(state, theta, dt);
}

double predicted_limit_radius(double V1_initial, const ContactAngle& theta,
                              int n) {
  if (!(V1_initial > 0.0)) {
    throw std::invalid_argument("predicted limit radius needs V1 > 0");
  }
  return std::pow(V1_initial / ((n + 1.0) * b_theta(n, theta)), 1.0 / n);
}

double distance_to_cap(const Grid& grid, const RadialField& field,
                       const ContactAngle& theta, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("cap radius must be positive");
  require_matching(grid, field);
  const CapSpec cap(theta, r, grid.n());
  double worst = 0.0;
  for (int i = 0; i < grid.n_beta(); ++i) {
    const double ref = cap_radial(cap, grid.beta(i));
    for (int j = 0; j < grid.n_xi(); ++j) {
      const double rho = std::exp(field.phi[grid.index(i, j)]);
      worst = std::max(worst, std::abs(rho - ref));
    }
  }
  return worst / r;
}

std::optional<std::string> check_monitors(
    const QuermassRecord& rec, const QuermassRecord& prev,
    const MonitorBaseline& baseline, double min_G1, double max_G1,
    const MonitorPolicy& policy, MonitorWorst& worst) {
  const QuermassRecord& b = baseline.first;
  std::optional<std::string> violation;
  auto report = [&](const std::string& msg) {
    if (!violation) violation = msg;
  };
  auto fmt = [](double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
  };

  const double drift = std::abs(rec.V1 - b.V1) / std::abs(b.V1);
  worst.V1_drift = std::max(worst.V1_drift, drift);
  if (drift > policy.tol_V1_drift) {
    report("V1 drift " + fmt(drift) + " exceeds " + fmt(policy.tol_V1_drift));
  }

  const double v2_step = (rec.V2 - prev.V2) / std::abs(b.V2);
  worst.V2_step_increase = std::max(worst.V2_step_increase, v2_step);
  if (v2_step > policy.tol_V2_increase) {
    report("V2 increased by " + fmt(v2_step) + " of |V2(0)| over a record");
  }

  const double ubar_ratio = rec.min_ubar / b.min_ubar;
  worst.ubar_ratio = std::min(worst.ubar_ratio, ubar_ratio);
  if (ubar_ratio < 1.0 - policy.tol_monitor) {
    report("min ubar fell to " + fmt(ubar_ratio) + " of its initial value");
  }

  const double h_ratio = rec.max_H / b.max_H;
  worst.H_ratio = std::max(worst.H_ratio, h_ratio);
  if (h_ratio > 1.0 + policy.tol_monitor) {
    report("max H rose to " + fmt(h_ratio) + " of its initial value");
  }

  const double p_ratio = rec.min_P / b.min_P;
  worst.P_ratio = std::min(worst.P_ratio, p_ratio);
  if (p_ratio < 1.0 - policy.tol_monitor) {
    report("min P fell to " + fmt(p_ratio) + " of its initial value");
  }

  const double gmin_ratio = rec.gauge_min / b.gauge_min;
  worst.gauge_min_ratio = std::min(worst.gauge_min_ratio, gmin_ratio);
  if (gmin_ratio < 1.0 - policy.tol_containment) {
    report("gauge_min left the barrier interval (ratio " + fmt(gmin_ratio) +
           ")");
  }
  const double gmax_ratio = rec.gauge_max / b.gauge_max;
  worst.gauge_max_ratio = std::max(worst.gauge_max_ratio, gmax_ratio);
  if (gmax_ratio > 1.0 + policy.tol_containment) {
    report("gauge_max left the barrier interval (ratio " + fmt(gmax_ratio) +
           ")");
  }

  // phi-dot bracket: G+1 stays inside its initial range (both ends positive
  // on admissible states).
  if (min_G1 < baseline.min_G1 * (1.0 - policy.tol_monitor) - policy.tol_monitor) {
    report("min(G+1) = " + fmt(min_G1) + " fell below its initial bracket " +
           fmt(baseline.min_G1));
  }
  if (max_G1 > baseline.max_G1 * (1.0 + policy.tol_monitor) + policy.tol_monitor) {
    report("max(G+1) = " + fmt(max_G1) + " rose above its initial bracket " +
           fmt(baseline.max_G1));
  }
  return violation;
}

RunResult run(const FlowRunConfig& config, const RecordCallback& on_record) {
  if (!(config.stepping.record_interval > 0.0)) {
    throw std::invalid_argument("record_interval must be positive");
  }
  if (!(config.stepping.t_max >= 0.0)) {
    throw std::invalid_argument("t_max must be >= 0");
  }
  if (!(config.stepping.tol_stationary > 0.0)) {
    throw std::invalid_argument("tol_stationary must be positive");
  }
  for (double tol : {config.monitors.tol_V1_drift, config.monitors.tol_V2_increase,
                     config.monitors.tol_monitor, config.monitors.tol_containment}) {
    if (!(tol > 0.0)) {
      throw std::invalid_argument("monitor tolerances must be positive");
    }
  }
  GridSpec gspec = config.grid;
  gspec.n = config.n;
  const Grid grid = Grid::build(gspec);
  const ContactAngle& theta = config.theta;

  RunResult result;
  InitialData init = make_initial(grid, config.init, theta);
  result.init_report = init.report;

  FlowState state;
  state.field = std::move(init.field);

  const Stepper stepper(grid, theta);
  const double t_max = config.stepping.t_max;
  const double t_eps = 1e-12 * (1.0 + t_max);
  double next_record = config.stepping.record_interval;

  MonitorBaseline baseline;
  MonitorWorst worst;
  QuermassRecord prev_rec;
  bool have_baseline = false;
  std::optional<StopReason> reason;

  while (true) {
    StencilField st;
    GeometrySnapshot snap;
    std::vector<double> G;
    double sup_G = 0.0, min_G1 = 0.0, max_G1 = 0.0;
    try {
      st = differentiate(grid, state.field, theta);
      snap = snapshot(grid, state.field, st, theta);
      G = rhs(grid, st, snap, theta, stepper.residual());
      min_G1 = max_G1 = G[0] + 1.0;
      for (double g : G) {
        sup_G = std::max(sup_G, std::abs(g));
        min_G1 = std::min(min_G1, g + 1.0);
        max_G1 = std::max(max_G1, g + 1.0);
      }
      if (!std::isfinite(sup_G)) {
        throw MeanConvexityLost(0, std::numeric_limits<double>::quiet_NaN());
      }
    } catch (const MeanConvexityLost& e) {
      reason = StopReason{StopCause::mean_convexity_lost, e.what()};
      break;
    }

    const bool stationary = sup_G < config.stepping.tol_stationary;
    const bool out_of_time = t_max - state.t <= t_eps;
    const bool record_due = !have_baseline ||
                            state.t + t_eps >= next_record || stationary ||
                            out_of_time;

    if (record_due) {
      QuermassRecord rec = integrate(grid, snap, st, theta);
      rec.t = state.t;
      rec.dt = state.last_dt;
      rec.sup_G = sup_G;
      if (!have_baseline) {
        baseline = MonitorBaseline{rec, min_G1, max_G1};
        have_baseline = true;
      } else {
        const auto violation = check_monitors(rec, prev_rec, baseline, min_G1,
                                              max_G1, config.monitors, worst);
        if (violation) {
          if (config.monitors.abort_on_violation) {
            result.history.push_back(rec);
            if (on_record) on_record(rec, state);
            prev_rec = rec;
            reason = StopReason{StopCause::monitor_violation, *violation};
            break;
          }
          log_warn("monitor warning at t = " + std::to_string(state.t) +
                   ": " + *violation);
        }
      }
      result.history.push_back(rec);
      if (on_record) on_record(rec, state);
      prev_rec = rec;
      while (next_record <= state.t + t_eps) {
        next_record += config.stepping.record_interval;
      }
    }

    if (stationary) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "sup|G| = %.6g", sup_G);
      reason = StopReason{StopCause::converged, buf};
      break;
    }
    if (out_of_time) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "t = %.6g", state.t);
      reason = StopReason{StopCause::time_limit, buf};
      break;
    }

    double dt = stable_dt(grid, st, snap, G, config.stepping.safety);
    dt = std::min(dt, t_max - state.t);
    StepResult sr = stepper.advance_with_stage1(state, theta, dt, G, sup_G);
    state = std::move(sr.state);
  }

  result.final_state = std::move(state);
  result.reason = *reason;
  result.worst = worst;
  if (!result.history.empty() && result.history.front().V1 > 0.0) {
    result.r_predicted =
        predicted_limit_radius(result.history.front().V1, theta, config.n);
    result.final_distance = distance_to_cap(grid, result.final_state.field,
                                            theta, result.r_predicted);
    const StencilField st =
        differentiate(grid, result.final_state.field, theta);
    const GeometrySnapshot snap =
        snapshot(grid, result.final_state.field, st, theta);
    result.r_fitted = fitted_radius(grid, snap, theta);
  }
  return result;
}

}  // namespace capflow
