#include "capflow/stencil.hpp"

#include <cmath>
#include <string>

namespace capflow {

GhostIterationError::GhostIterationError(int node_in, double residual_in)
    : std::runtime_error(
          "capillary ghost fixed point did not converge at xi node " +
          std::to_string(node_in) + " (residual " +
          std::to_string(residual_in) + ")"),
      node(node_in),
      residual(residual_in) {}

namespace {

// Cubic through the last three interior cells with p'(pi/2) = g.  Returns
// the ghost value p(+h/2) and the face trace p(0).  Exact for cubics, so the
// ghost error on smooth fields is O(h^4) and boundary-cell Hessians stay
// second order.
struct Extrapolation {
  double ghost;
  double trace;
};

inline Extrapolation neumann_cubic(double p1, double p2, double p3, double g,
                                   double h) {
  const double f1 = p1 + 0.5 * h * g;
  const double f2 = p2 + 1.5 * h * g;
  const double f3 = p3 + 2.5 * h * g;
  const double d = -4.0 * (f3 - 3.0 * f2 + 2.0 * f1) / 23.0;  // = d_coef h^3
  const double c = 0.5 * (f2 - f1 + 3.25 * d);                // = c_coef h^2
  Extrapolation e;
  e.ghost = p1 + h * g + 0.25 * d;
  e.trace = f1 - 0.25 * c + 0.125 * d;
  return e;
}

}  // namespace

GhostClosure capillary_ghost(const Grid& grid, const RadialField& field,
                             const ContactAngle& theta) {
  require_matching(grid, field);
  const int nb = grid.n_beta();
  const int nxi = grid.n_xi();
  const double h = grid.dbeta();
  const double cot = theta.cot();

  GhostClosure bc;
  bc.ghost.resize(nxi);
  bc.trace.resize(nxi);
  bc.slope.assign(nxi, cot);
  bc.trace_xi.assign(nxi, 0.0);

  auto phi_at = [&](int i, int j) { return field.phi[grid.index(i, j)]; };

  if (grid.axisymmetric()) {
    const Extrapolation e =
        neumann_cubic(phi_at(nb - 1, 0), phi_at(nb - 2, 0), phi_at(nb - 3, 0),
                      cot, h);
    bc.ghost[0] = e.ghost;
    bc.trace[0] = e.trace;
    // g = cot(theta) solves g = cos(theta) sqrt(1+g^2) identically.
    bc.residual = std::abs(cot - theta.cos() * std::sqrt(1.0 + cot * cot));
    return bc;
  }

  // 2D: the slope couples to the azimuthal derivative of the equator trace.
  // Damped fixed point; the map is a strong contraction for resolved data.
  const double dxi = grid.dxi();
  const double tol = 1e-12 * std::max(1.0, std::abs(cot));
  const double damping = 0.7;
  std::vector<double> g(nxi, cot), g_new(nxi);
  bool converged = false;
  int worst = 0;
  double res = 0.0;
  for (int iter = 1; iter <= 20; ++iter) {
    bc.iterations = iter;
    for (int j = 0; j < nxi; ++j) {
      const Extrapolation e = neumann_cubic(
          phi_at(nb - 1, j), phi_at(nb - 2, j), phi_at(nb - 3, j), g[j], h);
      bc.ghost[j] = e.ghost;
      bc.trace[j] = e.trace;
    }
    res = 0.0;
    for (int j = 0; j < nxi; ++j) {
      const int jp = (j + 1) % nxi;
      const int jm = (j + nxi - 1) % nxi;
      bc.trace_xi[j] = (bc.trace[jp] - bc.trace[jm]) / (2.0 * dxi);
      g_new[j] = cot * std::sqrt(1.0 + bc.trace_xi[j] * bc.trace_xi[j]);
      const double r = std::abs(g_new[j] - g[j]);
      if (r > res) {
        res = r;
        worst = j;
      }
    }
    if (res < tol) {
      g = g_new;
      converged = true;
      break;
    }
    for (int j = 0; j < nxi; ++j) g[j] += damping * (g_new[j] - g[j]);
  }
  if (!converged) throw GhostIterationError(worst, res);

  // Final pass with the converged slope.
  for (int j = 0; j < nxi; ++j) {
    const Extrapolation e = neumann_cubic(
        phi_at(nb - 1, j), phi_at(nb - 2, j), phi_at(nb - 3, j), g[j], h);
    bc.ghost[j] = e.ghost;
    bc.trace[j] = e.trace;
    bc.slope[j] = g[j];
  }
  double bc_res = 0.0;
  for (int j = 0; j < nxi; ++j) {
    const int jp = (j + 1) % nxi;
    const int jm = (j + nxi - 1) % nxi;
    bc.trace_xi[j] = (bc.trace[jp] - bc.trace[jm]) / (2.0 * dxi);
    const double v_face = std::sqrt(1.0 + bc.slope[j] * bc.slope[j] +
                                    bc.trace_xi[j] * bc.trace_xi[j]);
    bc_res = std::max(bc_res, std::abs(bc.slope[j] - theta.cos() * v_face));
  }
  bc.residual = std::max(bc_res, res);
  return bc;
}

StencilField differentiate(const Grid& grid, const RadialField& field,
                           const ContactAngle& theta) {
  require_matching(grid, field);
  const int nb = grid.n_beta();
  const int nxi = grid.n_xi();
  const int cells = grid.cells();
  const double h = grid.dbeta();

  StencilField st;
  st.boundary = capillary_ghost(grid, field, theta);
  st.d_beta.resize(cells);
  st.hess_bb.resize(cells);
  st.grad_sq.resize(cells);

  if (grid.axisymmetric()) {
    st.ang.resize(cells);
    for (int i = 0; i < nb; ++i) {
      const double pm = (i == 0) ? field.phi[0] : field.phi[i - 1];
      const double pp = (i == nb - 1) ? st.boundary.ghost[0] : field.phi[i + 1];
      const double p0 = field.phi[i];
      st.d_beta[i] = (pp - pm) / (2.0 * h);
      st.hess_bb[i] = (pp - 2.0 * p0 + pm) / (h * h);
      st.ang[i] = grid.cot_beta(i) * st.d_beta[i];
      st.grad_sq[i] = st.d_beta[i] * st.d_beta[i];
    }
    return st;
  }

  st.d_xi.resize(cells);
  st.hess_bx.resize(cells);
  st.hess_xx.resize(cells);
  const double dxi = grid.dxi();
  const int half = nxi / 2;
  // phi(-beta, xi) = phi(beta, xi + pi) closes the pole.
  auto phi_at = [&](int i, int j) -> double {
    j = (j % nxi + nxi) % nxi;
    if (i < 0) return field.phi[grid.index(-i - 1, (j + half) % nxi)];
    if (i >= nb) return st.boundary.ghost[j];
    return field.phi[grid.index(i, j)];
  };

  for (int i = 0; i < nb; ++i) {
    const double sb = grid.sin_beta(i);
    const double cb = grid.cos_beta(i);
    const double cotb = cb / sb;
    for (int j = 0; j < nxi; ++j) {
      const int k = grid.index(i, j);
      const double p0 = field.phi[k];
      const double pN = phi_at(i + 1, j);
      const double pS = phi_at(i - 1, j);
      const double pE = phi_at(i, j + 1);
      const double pW = phi_at(i, j - 1);
      st.d_beta[k] = (pN - pS) / (2.0 * h);
      st.d_xi[k] = (pE - pW) / (2.0 * dxi);
      st.hess_bb[k] = (pN - 2.0 * p0 + pS) / (h * h);
      const double mixed = (phi_at(i + 1, j + 1) - phi_at(i + 1, j - 1) -
                            phi_at(i - 1, j + 1) + phi_at(i - 1, j - 1)) /
                           (4.0 * h * dxi);
      st.hess_bx[k] = mixed - cotb * st.d_xi[k];
      st.hess_xx[k] =
          (pE - 2.0 * p0 + pW) / (dxi * dxi) + sb * cb * st.d_beta[k];
      const double dxn = st.d_xi[k] / sb;
      st.grad_sq[k] = st.d_beta[k] * st.d_beta[k] + dxn * dxn;
    }
  }
  return st;
}

int polar_mode_cap(const Grid& grid, int row) {
  const int half = grid.n_xi() / 2;
  if (grid.axisymmetric()) return 0;
  const double mc = 0.5 * kPi * grid.sin_beta(row) / grid.dbeta();
  if (mc >= half) return half;
  return static_cast<int>(std::floor(mc));
}

PolarFilter::PolarFilter(const Grid& grid) {
  if (grid.axisymmetric()) return;
  n_xi_ = grid.n_xi();
  const int half = n_xi_ / 2;
  for (int i = 0; i < grid.n_beta(); ++i) {
    const int mc = polar_mode_cap(grid, i);
    if (mc < half) rows_.emplace_back(i, mc);
  }
  if (rows_.empty()) return;
  cos_tab_.resize(static_cast<size_t>(half + 1) * n_xi_);
  sin_tab_.resize(static_cast<size_t>(half + 1) * n_xi_);
  for (int m = 1; m <= half; ++m) {
    for (int j = 0; j < n_xi_; ++j) {
      const double arg = 2.0 * kPi * m * j / n_xi_;
      cos_tab_[static_cast<size_t>(m) * n_xi_ + j] = std::cos(arg);
      sin_tab_[static_cast<size_t>(m) * n_xi_ + j] = std::sin(arg);
    }
  }
}

void PolarFilter::apply(std::vector<double>& values) const {
  const int half = n_xi_ / 2;
  for (const auto& [row, mc] : rows_) {
    double* v = values.data() + static_cast<size_t>(row) * n_xi_;
    for (int m = mc + 1; m <= half; ++m) {
      const double* ct = cos_tab_.data() + static_cast<size_t>(m) * n_xi_;
      const double* stb = sin_tab_.data() + static_cast<size_t>(m) * n_xi_;
      double am = 0.0, bm = 0.0;
      for (int j = 0; j < n_xi_; ++j) {
        am += v[j] * ct[j];
        bm += v[j] * stb[j];
      }
      const double scale = (m == half) ? 1.0 / n_xi_ : 2.0 / n_xi_;
      am *= scale;
      bm *= scale;
      for (int j = 0; j < n_xi_; ++j) v[j] -= am * ct[j] + bm * stb[j];
    }
  }
}

}  // namespace capflow
