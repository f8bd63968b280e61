#pragma once

#include "capflow/surface.hpp"

namespace capflow {

// Time-stamped global quantities of one state.  Field order matches the CSV
// schema emitted by the CLI.
struct QuermassRecord {
  double t = 0.0;
  double dt = 0.0;
  double V1 = 0.0;              // area - cos(theta) wetted_area (conserved)
  double V2 = 0.0;              // (total_H - cos sin contact)/n (nonincreasing)
  double area = 0.0;
  double wetted_area = 0.0;
  double contact_length = 0.0;
  double total_H = 0.0;
  double deficit = 0.0;         // Minkowski deficit, zero exactly on caps
  double deficit_norm = 0.0;    // deficit / total_H (scale-free)
  double min_ubar = 0.0;
  double max_H = 0.0;
  double min_P = 0.0;
  double gauge_min = 0.0;
  double gauge_max = 0.0;
  double sup_G = 0.0;           // stationarity residual, filled by the solver
};

struct DeficitValue {
  double raw;
  double normalized;
};

// deficit = total_H - n (n+1)^{1/n} b_theta^{1/n} V1^{(n-1)/n}
//           - sin(theta) cos(theta) contact_length.
// Nonnegative for star-shaped mean-convex capillary data; all three terms
// scale like r^{n-1} under dilation.
DeficitValue minkowski_deficit(const QuermassRecord& record,
                               const ContactAngle& theta, int n);

// Midpoint quadrature of all global quantities on the cell-centered grid.
// Boundary traces come from the ghost-consistent face interpolation, the
// same stencil as the boundary condition.
QuermassRecord integrate(const Grid& grid, const GeometrySnapshot& snap,
                         const StencilField& st, const ContactAngle& theta);

}  // namespace capflow
