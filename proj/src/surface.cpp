#include "capflow/surface.hpp"

#include <cmath>
#include <limits>

namespace capflow {

WeingartenField weingarten(const Grid& grid, const RadialField& field,
                           const StencilField& st) {
  require_matching(grid, field);
  const int cells = grid.cells();
  const int n = grid.n();
  WeingartenField w;
  w.trace.resize(cells);
  w.hsq.resize(cells);

  if (grid.axisymmetric()) {
    w.k_beta.resize(cells);
    w.k_ang.resize(cells);
    for (int i = 0; i < cells; ++i) {
      const double v2 = 1.0 + st.grad_sq[i];
      const double inv = 1.0 / (std::exp(field.phi[i]) * std::sqrt(v2));
      w.k_beta[i] = inv * (1.0 - st.hess_bb[i] / v2);
      w.k_ang[i] = inv * (1.0 - st.ang[i]);
      w.trace[i] = w.k_beta[i] + (n - 1) * w.k_ang[i];
      w.hsq[i] = w.k_beta[i] * w.k_beta[i] + (n - 1) * w.k_ang[i] * w.k_ang[i];
    }
    return w;
  }

  w.w_bb.resize(cells);
  w.w_bx.resize(cells);
  w.w_xb.resize(cells);
  w.w_xx.resize(cells);
  const int nxi = grid.n_xi();
  for (int i = 0; i < grid.n_beta(); ++i) {
    const double sb = grid.sin_beta(i);
    const double sb2 = sb * sb;
    for (int j = 0; j < nxi; ++j) {
      const int k = grid.index(i, j);
      const double v2 = 1.0 + st.grad_sq[k];
      const double db = st.d_beta[k];
      const double dx = st.d_xi[k];
      const double a_bb = 1.0 - db * db / v2;
      const double a_bx = -db * dx / (v2 * sb2);
      const double a_xx = (1.0 - dx * dx / (v2 * sb2)) / sb2;
      const double inv = 1.0 / (std::exp(field.phi[k]) * std::sqrt(v2));
      w.w_bb[k] = inv * (1.0 - (a_bb * st.hess_bb[k] + a_bx * st.hess_bx[k]));
      w.w_bx[k] = inv * (0.0 - (a_bb * st.hess_bx[k] + a_bx * st.hess_xx[k]));
      w.w_xb[k] = inv * (0.0 - (a_bx * st.hess_bb[k] + a_xx * st.hess_bx[k]));
      w.w_xx[k] = inv * (1.0 - (a_bx * st.hess_bx[k] + a_xx * st.hess_xx[k]));
      w.trace[k] = w.w_bb[k] + w.w_xx[k];
      w.hsq[k] = w.w_bb[k] * w.w_bb[k] + w.w_xx[k] * w.w_xx[k] +
                 2.0 * w.w_bx[k] * w.w_xb[k];
    }
  }
  return w;
}

GeometrySnapshot snapshot(const Grid& grid, const RadialField& field,
                          const StencilField& st, const ContactAngle& theta) {
  require_matching(grid, field);
  const int cells = grid.cells();
  const int n = grid.n();
  const int nxi = grid.n_xi();
  const double ct = theta.cos();

  GeometrySnapshot s;
  s.rho.resize(cells);
  s.v.resize(cells);
  s.H.resize(cells);
  s.nu_e.resize(cells);
  s.u.resize(cells);
  s.ubar.resize(cells);
  s.P.resize(cells);
  s.f.resize(cells);
  s.shape = weingarten(grid, field, st);

  for (int i = 0; i < grid.n_beta(); ++i) {
    const double sb = grid.sin_beta(i);
    const double cb = grid.cos_beta(i);
    for (int j = 0; j < nxi; ++j) {
      const int k = grid.index(i, j);
      s.rho[k] = std::exp(field.phi[k]);
      const double v2 = 1.0 + st.grad_sq[k];
      s.v[k] = std::sqrt(v2);
      // Same contraction as the PDE denominator, so the solver never divides
      // by an H inconsistent with its own discretization.
      double contraction;
      if (grid.axisymmetric()) {
        contraction = st.hess_bb[k] / v2 + (n - 1) * st.ang[k];
      } else {
        const double sb2 = sb * sb;
        const double db = st.d_beta[k];
        const double dx = st.d_xi[k];
        const double a_bb = 1.0 - db * db / v2;
        const double a_bx = -db * dx / (v2 * sb2);
        const double a_xx = (1.0 - dx * dx / (v2 * sb2)) / sb2;
        contraction = a_bb * st.hess_bb[k] + 2.0 * a_bx * st.hess_bx[k] +
                      a_xx * st.hess_xx[k];
      }
      s.H[k] = (n - contraction) / (s.rho[k] * s.v[k]);
      s.nu_e[k] = -(cb + sb * st.d_beta[k]) / s.v[k];
      s.u[k] = s.rho[k] / s.v[k];
      s.ubar[k] = s.u[k] / (1.0 + ct * s.nu_e[k]);
      s.P[k] = s.ubar[k] * s.H[k];
      s.f[k] = (s.H[k] > 0.0)
                   ? n * (1.0 + ct * s.nu_e[k]) / s.H[k] - s.u[k]
                   : std::numeric_limits<double>::quiet_NaN();
    }
  }

  s.min_H = s.H[0];
  s.max_H = s.H[0];
  s.min_u = s.u[0];
  s.min_ubar = s.ubar[0];
  s.max_ubar = s.ubar[0];
  s.min_P = s.P[0];
  for (int k = 1; k < cells; ++k) {
    s.min_H = std::min(s.min_H, s.H[k]);
    s.max_H = std::max(s.max_H, s.H[k]);
    s.min_u = std::min(s.min_u, s.u[k]);
    s.min_ubar = std::min(s.min_ubar, s.ubar[k]);
    s.max_ubar = std::max(s.max_ubar, s.ubar[k]);
    s.min_P = std::min(s.min_P, s.P[k]);
  }
  s.mean_convex = s.min_H > 0.0;
  return s;
}

}  // namespace capflow
