#include "capflow/initial.hpp"

#include <cmath>
#include <random>
#include <string>

#include "capflow/surface.hpp"

namespace capflow {

InadmissibleInitialData::InadmissibleInitialData(const ValidationReport& r)
    : std::runtime_error("initial data inadmissible after " +
                         std::to_string(r.retries_used) +
                         " retries (min H = " + std::to_string(r.min_H) +
                         ", min u = " + std::to_string(r.min_u) +
                         ", bc residual = " + std::to_string(r.bc_residual) +
                         ")"),
      report(r) {}

namespace {

constexpr int kMaxRetries = 8;
constexpr int kMaxModeFrequency = 6;

// Quintic smoothstep: C^2 cutoff, identically 1 for beta <= pi/2 - 2 delta
// and 0 for beta >= pi/2 - delta.
double collar_cutoff(double beta, double delta) {
  const double x = (kPi / 2.0 - delta - beta) / delta;
  if (x >= 1.0) return 1.0;
  if (x <= 0.0) return 0.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double uniform_pm1(std::mt19937_64& rng) {
  // Explicit mapping keeps the stream bit-identical across platforms.
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

// Seeded mode combination, normalized to sup |Y| = 1 over the grid.
std::vector<double> random_profile(const Grid& grid, const InitSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<double> y(grid.cells(), 0.0);
  for (const auto& [freq, weight] : spec.modes) {
    if (freq < 0 || freq > kMaxModeFrequency) {
      throw std::invalid_argument("mode frequency " + std::to_string(freq) +
                                  " outside [0, 6]");
    }
    if (grid.axisymmetric()) {
      const double amp = weight * uniform_pm1(rng);
      for (int i = 0; i < grid.n_beta(); ++i) {
        y[i] += amp * std::legendre(freq, grid.cos_beta(i));
      }
    } else {
      const double ac = weight * uniform_pm1(rng);
      const double as = weight * uniform_pm1(rng);
      for (int i = 0; i < grid.n_beta(); ++i) {
        const double radial = std::pow(grid.sin_beta(i), freq);
        for (int j = 0; j < grid.n_xi(); ++j) {
          const double m_xi = freq * grid.xi(j);
          y[grid.index(i, j)] +=
              radial * (ac * std::cos(m_xi) + as * std::sin(m_xi));
        }
      }
    }
  }
  double sup = 0.0;
  for (double v : y) sup = std::max(sup, std::abs(v));
  if (sup > 0.0) {
    for (double& v : y) v /= sup;
  }
  return y;
}

}  // namespace

RadialField cap_field(const Grid& grid, const ContactAngle& theta, double r) {
  const CapSpec cap(theta, r, grid.n());
  RadialField f;
  f.phi.resize(grid.cells());
  for (int i = 0; i < grid.n_beta(); ++i) {
    const double value = std::log(cap_radial(cap, grid.beta(i)));
    for (int j = 0; j < grid.n_xi(); ++j) f.phi[grid.index(i, j)] = value;
  }
  return f;
}

ValidationReport validate(const Grid& grid, const RadialField& field,
                          const ContactAngle& theta, double h_min) {
  ValidationReport rep;
  rep.h_min = h_min;
  bool finite = true;
  for (double p : field.phi) {
    if (!std::isfinite(p)) finite = false;
  }
  if (!finite) {
    rep.admissible = false;
    return rep;
  }
  const StencilField st = differentiate(grid, field, theta);
  const GeometrySnapshot snap = snapshot(grid, field, st, theta);
  rep.min_H = snap.min_H;
  rep.min_u = snap.min_u;
  rep.bc_residual = st.boundary.residual;
  rep.admissible =
      rep.min_H >= h_min && rep.min_u > 0.0 && rep.bc_residual <= 1e-10;
  return rep;
}

InitialData make_initial(const Grid& grid, const InitSpec& spec,
                         const ContactAngle& theta) {
  if (!(spec.epsilon >= 0.0)) {
    throw std::invalid_argument("perturbation amplitude must be >= 0");
  }
  if (!(spec.cutoff_delta > 0.0) || !(spec.cutoff_delta < kPi / 4.0)) {
    throw std::invalid_argument("cutoff_delta must lie in (0, pi/4)");
  }
  const double h_min = spec.h_min_factor * grid.n() / spec.r;

  RadialField base = cap_field(grid, theta, spec.r);
  if (spec.kind == InitSpec::Kind::cap || spec.epsilon == 0.0) {
    ValidationReport rep = validate(grid, base, theta, h_min);
    rep.epsilon_used = 0.0;
    if (!rep.admissible) throw InadmissibleInitialData(rep);
    return {std::move(base), rep};
  }

  const std::vector<double> profile = random_profile(grid, spec);
  double eps = spec.epsilon;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    RadialField field = base;
    for (int i = 0; i < grid.n_beta(); ++i) {
      const double cut = collar_cutoff(grid.beta(i), spec.cutoff_delta);
      if (cut == 0.0) continue;
      for (int j = 0; j < grid.n_xi(); ++j) {
        const int k = grid.index(i, j);
        field.phi[k] += eps * cut * profile[k];
      }
    }
    ValidationReport rep = validate(grid, field, theta, h_min);
    rep.retries_used = attempt;
    rep.epsilon_used = eps;
    if (rep.admissible) return {std::move(field), rep};
    if (attempt == kMaxRetries) throw InadmissibleInitialData(rep);
    eps *= 0.5;
  }
  throw std::logic_error("unreachable");
}

}  // namespace capflow
