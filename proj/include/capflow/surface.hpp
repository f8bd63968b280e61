#pragma once

#include <vector>

#include "capflow/stencil.hpp"

namespace capflow {

// Shape operator (Weingarten map) of the radial graph,
//   h^i_j = (1/(e^phi v)) [ delta^i_j - (sigma^{ik} - phi^i phi^k / v^2) phi_{;kj} ].
// Axisymmetric grids expose the two principal curvatures directly; 2D grids
// the full mixed 2x2 matrix.  trace equals the mean curvature by the same
// algebra (used as a consistency check, not a discretization statement).
struct WeingartenField {
  std::vector<double> k_beta, k_ang;           // axisymmetric
  std::vector<double> w_bb, w_bx, w_xb, w_xx;  // 2D entries
  std::vector<double> trace;
  std::vector<double> hsq;  // |h|^2 = h^i_j h^j_i
};

WeingartenField weingarten(const Grid& grid, const RadialField& field,
                           const StencilField& st);

// All pointwise geometry of one radial graph.  Non-mean-convex states are
// representable (H <= 0 allowed, mean_convex flag cleared) so validators can
// report them; only the flow solver treats them as fatal.
struct GeometrySnapshot {
  std::vector<double> rho;   // e^phi
  std::vector<double> v;     // sqrt(1 + |grad0 phi|^2)
  std::vector<double> H;     // mean curvature (sum of principal curvatures)
  std::vector<double> nu_e;  // <nu, e> = -(cos b + sin b d_beta phi)/v
  std::vector<double> u;     // support function <x, nu> = e^phi / v
  std::vector<double> ubar;  // u / (1 + cos(theta) nu_e)
  std::vector<double> P;     // ubar * H
  std::vector<double> f;     // normal speed n(1 + cos(theta) nu_e)/H - u
  WeingartenField shape;

  double min_H = 0.0, max_H = 0.0;
  double min_u = 0.0;
  double min_ubar = 0.0, max_ubar = 0.0;
  double min_P = 0.0;
  bool mean_convex = false;
};

GeometrySnapshot snapshot(const Grid& grid, const RadialField& field,
                          const StencilField& st, const ContactAngle& theta);

}  // namespace capflow
