#include "capflow/grid.hpp"

#include <cmath>
#include <string>

namespace capflow {

Grid Grid::build(const GridSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("surface dimension must be >= 2");
  if (spec.n_beta < 16) {
    throw std::invalid_argument("n_beta must be >= 16, got " +
                                std::to_string(spec.n_beta));
  }
  if (!spec.axisymmetric) {
    if (spec.n != 2) {
      throw std::invalid_argument(
          "non-axisymmetric grids are only supported for n = 2");
    }
    if (spec.n_xi < 8) {
      throw std::invalid_argument("n_xi must be >= 8, got " +
                                  std::to_string(spec.n_xi));
    }
    if (spec.n_xi % 2 != 0) {
      throw std::invalid_argument(
          "n_xi must be even (pole closure pairs xi with xi + pi), got " +
          std::to_string(spec.n_xi));
    }
  }

  Grid g;
  g.spec_ = spec;
  g.dbeta_ = (kPi / 2.0) / spec.n_beta;
  g.dxi_ = spec.axisymmetric ? 0.0 : 2.0 * kPi / spec.n_xi;

  g.beta_.resize(spec.n_beta);
  g.sin_beta_.resize(spec.n_beta);
  g.cos_beta_.resize(spec.n_beta);
  g.weight_.resize(spec.n_beta);
  const double angular = spec.axisymmetric ? sphere_area(spec.n - 1) : g.dxi_;
  for (int i = 0; i < spec.n_beta; ++i) {
    g.beta_[i] = (i + 0.5) * g.dbeta_;
    g.sin_beta_[i] = std::sin(g.beta_[i]);
    g.cos_beta_[i] = std::cos(g.beta_[i]);
    g.weight_[i] =
        std::pow(g.sin_beta_[i], spec.n - 1) * g.dbeta_ * angular;
  }
  return g;
}

}  // namespace capflow
