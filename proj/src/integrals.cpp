#include "capflow/integrals.hpp"

#include <cmath>
#include <stdexcept>

#include "capflow/caps.hpp"

namespace capflow {

DeficitValue minkowski_deficit(const QuermassRecord& record,
                               const ContactAngle& theta, int n) {
  if (!(record.V1 > 0.0)) {
    throw std::invalid_argument("Minkowski deficit needs V1 > 0");
  }
  const double b = b_theta(n, theta);
  const double raw = record.total_H -
                     n * std::pow(n + 1.0, 1.0 / n) * std::pow(b, 1.0 / n) *
                         std::pow(record.V1, (n - 1.0) / n) -
                     theta.sin() * theta.cos() * record.contact_length;
  return {raw, raw / record.total_H};
}

QuermassRecord integrate(const Grid& grid, const GeometrySnapshot& snap,
                         const StencilField& st, const ContactAngle& theta) {
  const int n = grid.n();
  const int nxi = grid.n_xi();
  const double c = theta.cos();

  QuermassRecord rec;
  // Graph area element relative to the round measure is e^{n phi} v.
  double area = 0.0, total_H = 0.0;
  double gmin = 0.0, gmax = 0.0;
  bool first = true;
  for (int i = 0; i < grid.n_beta(); ++i) {
    const double w = grid.weight(i);
    const double cb = grid.cos_beta(i);
    for (int j = 0; j < nxi; ++j) {
      const int k = grid.index(i, j);
      const double elem = std::pow(snap.rho[k], n) * snap.v[k] * w;
      area += elem;
      total_H += snap.H[k] * elem;
      const double gauge = cap_gauge(snap.rho[k], snap.rho[k] * cb, theta);
      if (first) {
        gmin = gmax = gauge;
        first = false;
      } else {
        gmin = std::min(gmin, gauge);
        gmax = std::max(gmax, gauge);
      }
    }
  }

  // Boundary traces.  Wetted area by the divergence theorem on the plane,
  // (1/n) contour integral of rho^n.
  double wetted = 0.0, contact = 0.0;
  if (grid.axisymmetric()) {
    const double rho_b = std::exp(st.boundary.trace[0]);
    wetted = ball_volume(n) * std::pow(rho_b, n);
    contact = sphere_area(n - 1) * std::pow(rho_b, n - 1);
  } else {
    const double dxi = grid.dxi();
    for (int j = 0; j < nxi; ++j) {
      const double rho_b = std::exp(st.boundary.trace[j]);
      const double rho_xi = rho_b * st.boundary.trace_xi[j];
      wetted += 0.5 * rho_b * rho_b * dxi;
      contact += std::sqrt(rho_b * rho_b + rho_xi * rho_xi) * dxi;
    }
  }

  rec.area = area;
  rec.total_H = total_H;
  rec.wetted_area = wetted;
  rec.contact_length = contact;
  rec.V1 = area - c * wetted;
  rec.V2 = (total_H - c * theta.sin() * contact) / n;
  const DeficitValue d = minkowski_deficit(rec, theta, n);
  rec.deficit = d.raw;
  rec.deficit_norm = d.normalized;
  rec.min_ubar = snap.min_ubar;
  rec.max_H = snap.max_H;
  rec.min_P = snap.min_P;
  rec.gauge_min = gmin;
  rec.gauge_max = gmax;
  return rec;
}

}  // namespace capflow
