#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "capflow/initial.hpp"
#include "capflow/integrals.hpp"

namespace capflow {

enum class StopCause {
  converged,           // sup |G| < tol_stationary
  time_limit,          // t reached t_max
  monitor_violation,   // a maximum-principle monitor tripped (abort policy)
  mean_convexity_lost  // min H <= 0 somewhere; the flow is undefined there
};

const char* to_string(StopCause cause);

struct StopReason {
  StopCause cause;
  std::string detail;
};

// Relative tolerances for the discrete analogues of the paper-level
// monotonicity statements.  The continuous statements are exact; discrete
// violations beyond O(dbeta^2) indicate bugs or under-resolution.
struct MonitorPolicy {
  double tol_V1_drift = 1e-3;
  double tol_V2_increase = 1e-8;   // per recorded step, relative to |V2(0)|
  double tol_monitor = 1e-3;       // ubar / H / P extrema and the G+1 bracket
  double tol_containment = 1e-3;   // cap-gauge barrier interval
  bool abort_on_violation = false;
};

struct SteppingSpec {
  double safety = 0.8;          // CFL safety factor in (0, 1]
  double t_max = 50.0;
  double tol_stationary = 1e-7;
  double record_interval = 0.1;
};

struct FlowState {
  double t = 0.0;
  RadialField field;
  double last_dt = 0.0;
  long step_count = 0;
};

struct MeanConvexityLost : std::runtime_error {
  MeanConvexityLost(int cell_in, double H_in);
  int cell;
  double H_value;
};

// Residual of the discrete G formula on the sampled unit cap.  G is exactly
// invariant under phi -> phi + const, so this one O(dbeta^2) field is the
// formula's residual on *every* sampled cap; the scheme subtracts it
// (well-balancing), which makes the whole family of discrete caps exactly
// stationary and lets sup|G| decay to rounding level instead of plateauing
// at the truncation error.
std::vector<double> equilibrium_residual(const Grid& grid,
                                         const ContactAngle& theta);

// G(phi_ij, phi_k) of the scalar flow d_t phi = G; equals
// n(1 + cos(theta)<nu,e>)/(u H) - 1, minus the equilibrium residual.  Both
// algebraic routes of the raw formula are evaluated and must agree to 1e-12
// relative.  Throws MeanConvexityLost when the denominator e^phi v H is not
// positive everywhere.
std::vector<double> rhs(const Grid& grid, const RadialField& field,
                        const ContactAngle& theta);
std::vector<double> rhs(const Grid& grid, const StencilField& st,
                        const GeometrySnapshot& snap, const ContactAngle& theta,
                        const std::vector<double>& residual);

// Parabolic CFL bound from the principal coefficient of dG/dphi_{;ij}
// (namely (G+1) A^{ij} / (e^phi v H)), plus the Christoffel advection terms;
// the xi spacing carries its sin(beta) metric factor, with the polar mode
// cap applied.
double stable_dt(const Grid& grid, const StencilField& st,
                 const GeometrySnapshot& snap, const std::vector<double>& G,
                 double safety);
double stable_dt(const Grid& grid, const RadialField& field,
                 const ContactAngle& theta, double safety);

struct StepResult {
  FlowState state;
  double sup_G;  // stationarity residual of the *pre-step* state
};

// One Heun (explicit trapezoidal) step; the capillary ghost layer is
// re-enforced before each stage, so the boundary condition holds on output.
StepResult step(const Grid& grid, const FlowState& state,
                const ContactAngle& theta, double dt);

// The unique cap radius carrying the conserved capillary area functional:
// r = (V1 / ((n+1) b_theta))^{1/n}.
double predicted_limit_radius(double V1_initial, const ContactAngle& theta,
                              int n);

// max over the grid of |rho - cap_radial(theta, r, beta)| / r.
double distance_to_cap(const Grid& grid, const RadialField& field,
                       const ContactAngle& theta, double r);

struct MonitorBaseline {
  QuermassRecord first;
  double min_G1 = 0.0;  // min over the grid of G+1 at t = 0
  double max_G1 = 0.0;
};

// Worst cases observed over a run, for summaries.
struct MonitorWorst {
  double V1_drift = 0.0;          // max |V1 - V1_0| / |V1_0|
  double V2_step_increase = 0.0;  // max (V2_k+1 - V2_k) / |V2_0|, >= 0
  double ubar_ratio = 1.0;        // min of min_ubar / min_ubar_0
  double H_ratio = 1.0;           // max of max_H / max_H_0
  double P_ratio = 1.0;           // min of min_P / min_P_0
  double gauge_min_ratio = 1.0;   // min of gauge_min / gauge_min_0
  double gauge_max_ratio = 1.0;   // max of gauge_max / gauge_max_0
};

std::optional<std::string> check_monitors(
    const QuermassRecord& rec, const QuermassRecord& prev,
    const MonitorBaseline& baseline, double min_G1, double max_G1,
    const MonitorPolicy& policy, MonitorWorst& worst);

struct FlowRunConfig {
  ContactAngle theta;
  int n = 2;
  GridSpec grid;
  SteppingSpec stepping;
  MonitorPolicy monitors;
  InitSpec init;
};

struct RunResult {
  std::vector<QuermassRecord> history;
  FlowState final_state;
  StopReason reason;
  ValidationReport init_report;
  MonitorWorst worst;
  double r_predicted = 0.0;
  double r_fitted = 0.0;
  double final_distance = 0.0;  // relative sup distance to the predicted cap
};

using RecordCallback =
    std::function<void(const QuermassRecord&, const FlowState&)>;

// Steps until stationarity or t_max, emitting a QuermassRecord at t = 0,
// every record_interval, and at the final time; monitor violations are
// warned or aborted per policy.
RunResult run(const FlowRunConfig& config, const RecordCallback& on_record = {});

}  // namespace capflow
