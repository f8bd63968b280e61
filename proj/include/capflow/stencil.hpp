#pragma once

#include <stdexcept>
#include <vector>

#include "capflow/caps.hpp"
#include "capflow/grid.hpp"

namespace capflow {

// Equator closure for the capillary boundary condition
//   d_beta phi = cos(theta) sqrt(1 + |grad0 phi|^2)   at beta = pi/2,
// resolved for the outward slope g:
//   axisymmetric:        g = cot(theta),
//   n = 2 full grid:     g = cot(theta) sqrt(1 + (d_xi trace)^2),
// which is algebraically exact and sign-consistent (v > 0).  The ghost cell
// beyond the equator is filled by a cubic one-sided extrapolation through
// the last three interior cells with the Neumann slope pinned at the face,
// so boundary-cell Hessian stencils keep full second-order accuracy.
struct GhostClosure {
  std::vector<double> ghost;     // value at beta = pi/2 + dbeta/2, per xi
  std::vector<double> trace;     // face value at beta = pi/2, per xi
  std::vector<double> slope;     // enforced d_beta phi at the face, per xi
  std::vector<double> trace_xi;  // d_xi of the trace (zero when axisymmetric)
  int iterations = 0;            // fixed-point iterations used (2D)
  double residual = 0.0;         // worst |g - cos(theta) v_face|
};

struct GhostIterationError : std::runtime_error {
  GhostIterationError(int node_in, double residual_in);
  int node;
  double residual;
};

GhostClosure capillary_ghost(const Grid& grid, const RadialField& field,
                             const ContactAngle& theta);

// First derivatives and covariant Hessian of phi on the round half-sphere.
// Central second-order differences; pole closed by symmetry pairing, equator
// by the capillary ghost layer.
struct StencilField {
  std::vector<double> d_beta;   // covariant = coordinate first derivative
  std::vector<double> d_xi;     // coordinate xi-derivative (2D only)
  std::vector<double> hess_bb;  // phi_{;beta beta}
  std::vector<double> hess_bx;  // phi_{;beta xi}  = raw mixed - cot(b) d_xi
  std::vector<double> hess_xx;  // phi_{;xi xi}    = raw + sin(b) cos(b) d_beta
  std::vector<double> ang;      // axisym angular Hessian per direction,
                                // cot(beta) d_beta  (lap0 = hess_bb + (n-1) ang)
  std::vector<double> grad_sq;  // |grad0 phi|^2
  GhostClosure boundary;
};

StencilField differentiate(const Grid& grid, const RadialField& field,
                           const ContactAngle& theta);

// Azimuthal mode cap near the pole: modes above floor(pi sin(beta)/(2 dbeta))
// are unresolvable on the beta grid and, left alone, force the explicit CFL
// through the floor.  Rows with full resolution return n_xi/2.
int polar_mode_cap(const Grid& grid, int row);

// Removes azimuthal modes above polar_mode_cap row by row.  No-op on
// axisymmetric grids.  Tables are precomputed, so keep one instance per run.
class PolarFilter {
 public:
  explicit PolarFilter(const Grid& grid);
  void apply(std::vector<double>& values) const;
  bool active() const { return !rows_.empty(); }

 private:
  int n_xi_ = 1;
  std::vector<std::pair<int, int>> rows_;  // (row, mode cap)
  std::vector<double> cos_tab_, sin_tab_;  // [m * n_xi + j]
};

}  // namespace capflow
