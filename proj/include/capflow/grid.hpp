#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "capflow/conventions.hpp"

namespace capflow {

struct GridSpec {
  int n = 2;                 // surface dimension
  int n_beta = 128;          // cells in beta over [0, pi/2]
  int n_xi = 1;              // azimuthal cells (n = 2 non-axisymmetric only)
  bool axisymmetric = true;
};

// Cell-centered grid on the closed upper half-sphere.  Neither the pole
// (beta = 0) nor the equator (beta = pi/2) is a node: the pole is closed by
// symmetry pairing and the equator by the capillary ghost layer, which keeps
// cot(beta) finite and makes the oblique boundary condition a ghost closure.
class Grid {
 public:
  static Grid build(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int n() const { return spec_.n; }
  bool axisymmetric() const { return spec_.axisymmetric; }
  int n_beta() const { return spec_.n_beta; }
  int n_xi() const { return spec_.axisymmetric ? 1 : spec_.n_xi; }
  int cells() const { return n_beta() * n_xi(); }
  int index(int i, int j) const { return i * n_xi() + j; }

  double dbeta() const { return dbeta_; }
  double dxi() const { return dxi_; }
  double beta(int i) const { return beta_[i]; }
  double xi(int j) const { return dxi_ * j; }
  double sin_beta(int i) const { return sin_beta_[i]; }
  double cos_beta(int i) const { return cos_beta_[i]; }
  double cot_beta(int i) const { return cos_beta_[i] / sin_beta_[i]; }
  // Round-measure quadrature weight of every cell in row i.
  double weight(int i) const { return weight_[i]; }

 private:
  GridSpec spec_;
  double dbeta_ = 0.0;
  double dxi_ = 0.0;
  std::vector<double> beta_, sin_beta_, cos_beta_, weight_;
};

// Log-radial graph function phi = log(rho) at cell centers; the flow's
// state variable.  Layout: index = i * n_xi + j (beta-major).
struct RadialField {
  std::vector<double> phi;
  double time = 0.0;
};

inline void require_matching(const Grid& grid, const RadialField& field) {
  if (static_cast<int>(field.phi.size()) != grid.cells()) {
    throw std::invalid_argument("field size does not match grid");
  }
}

}  // namespace capflow
