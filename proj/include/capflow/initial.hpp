#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "capflow/stencil.hpp"

namespace capflow {

// Construction recipe for admissible initial hypersurfaces: an exact cap or
// a seeded perturbation of one.  Perturbations vanish in a boundary collar
// of width cutoff_delta, so the exact cap boundary condition is inherited
// rather than re-solved.
struct InitSpec {
  enum class Kind { cap, perturbed_cap };
  Kind kind = Kind::perturbed_cap;
  double r = 1.0;
  double epsilon = 0.05;
  // (frequency, weight): axisymmetric Legendre profiles P_k(cos beta), or
  // sin^k(beta) * (cos, sin)(k xi) products on 2D grids.  Frequencies are
  // capped at 6 so the grid keeps >= 20 cells per wavelength.
  std::vector<std::pair<int, double>> modes = {
      {1, 1.0}, {2, 0.7}, {3, 0.4}, {4, 0.2}};
  std::uint64_t seed = 0;
  double cutoff_delta = kPi / 10.0;
  // Strict mean-convexity margin: admissible needs min H >= h_min_factor*n/r.
  double h_min_factor = 0.1;
};

struct ValidationReport {
  double min_H = 0.0;
  double min_u = 0.0;
  double bc_residual = 0.0;
  bool admissible = false;
  int retries_used = 0;
  double h_min = 0.0;
  double epsilon_used = 0.0;
};

struct InadmissibleInitialData : std::runtime_error {
  explicit InadmissibleInitialData(const ValidationReport& r);
  ValidationReport report;
};

struct InitialData {
  RadialField field;
  ValidationReport report;
};

// phi = log cap_radial(theta, r, beta) sampled at cell centers.
RadialField cap_field(const Grid& grid, const ContactAngle& theta, double r);

ValidationReport validate(const Grid& grid, const RadialField& field,
                          const ContactAngle& theta, double h_min);

// Builds the field and validates it; on failure the perturbation amplitude
// is halved up to 8 times before giving up.
InitialData make_initial(const Grid& grid, const InitSpec& spec,
                         const ContactAngle& theta);

}  // namespace capflow
