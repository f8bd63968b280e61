#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "capflow/caps.hpp"
#include "capflow/grid.hpp"
#include "capflow/initial.hpp"

namespace capflow::testing {

inline Grid make_axisym_grid(int n_beta, int n = 2) {
  GridSpec spec;
  spec.n = n;
  spec.n_beta = n_beta;
  spec.axisymmetric = true;
  return Grid::build(spec);
}

inline Grid make_full_grid(int n_beta, int n_xi) {
  GridSpec spec;
  spec.n = 2;
  spec.n_beta = n_beta;
  spec.n_xi = n_xi;
  spec.axisymmetric = false;
  return Grid::build(spec);
}

// Smooth random graph near a cap; low frequencies only, no attempt at
// boundary compatibility (the ghost closure enforces the BC regardless).
inline RadialField random_smooth_field(const Grid& grid,
                                       const ContactAngle& theta,
                                       unsigned seed, double amplitude) {
  RadialField field = cap_field(grid, theta, 1.0);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int m = 1; m <= 4; ++m) {
    const double a = amplitude * unif(rng) / m;
    const double b = amplitude * unif(rng) / m;
    const double c = amplitude * unif(rng) / m;
    for (int i = 0; i < grid.n_beta(); ++i) {
      const double cb = grid.cos_beta(i);
      const double sb = grid.sin_beta(i);
      for (int j = 0; j < grid.n_xi(); ++j) {
        double bump = a * std::legendre(m, cb);
        if (!grid.axisymmetric()) {
          bump += std::pow(sb, m) *
                  (b * std::cos(m * grid.xi(j)) + c * std::sin(m * grid.xi(j)));
        }
        field.phi[grid.index(i, j)] += bump;
      }
    }
  }
  return field;
}

// Exact derivative of log cap_radial(theta, r, beta):
//   phi_beta = cos(theta) sin(beta) / sqrt(cos^2 cos^2(beta) + sin^2).
inline double cap_phi_beta(const ContactAngle& theta, double beta) {
  const double c = theta.cos();
  const double s = theta.sin();
  const double cb = std::cos(beta);
  return c * std::sin(beta) / std::sqrt(c * c * cb * cb + s * s);
}

inline double cap_phi_beta_beta(const ContactAngle& theta, double beta) {
  const double c = theta.cos();
  const double s = theta.sin();
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  const double S = std::sqrt(c * c * cb * cb + s * s);
  return c * cb / S + c * c * c * cb * sb * sb / (S * S * S);
}

}  // namespace capflow::testing
