#include <cmath>

#include "capflow/surface.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace capflow;
using namespace capflow::testing;

TEST_CASE("snapshot reproduces cap geometry") {
  const ContactAngle theta = ContactAngle::from_degrees(120.0);
  const double r = 1.3;
  const Grid g = make_axisym_grid(128);
  const RadialField f = cap_field(g, theta, r);
  const StencilField st = differentiate(g, f, theta);
  const GeometrySnapshot s = snapshot(g, f, st, theta);
  const double h2 = g.dbeta() * g.dbeta();

  for (int i = 0; i < g.cells(); ++i) {
    CHECK(s.H[i] == doctest::Approx(2.0 / r).epsilon(20.0 * h2));
    CHECK(s.ubar[i] == doctest::Approx(r).epsilon(20.0 * h2));
    CHECK(std::abs(s.f[i]) < 10.0 * h2 * r);
    CHECK(s.v[i] >= 1.0);
    CHECK(s.u[i] > 0.0);
  }
  CHECK(s.mean_convex);

  // The boundary value of <nu,e> is the capillary condition itself: the
  // closure-consistent face normal gives exactly -cos(theta).
  const double gslope = st.boundary.slope[0];
  const double v_face = std::sqrt(1.0 + gslope * gslope);
  const double nu_e_face = -gslope / v_face;
  CHECK(nu_e_face == doctest::Approx(-theta.cos()).epsilon(1e-14));
}

TEST_CASE("unit hemisphere field is exact away from the ghost cell") {
  const Grid g = make_axisym_grid(64);
  RadialField f;
  f.phi.assign(g.cells(), 0.0);  // rho = 1

  SUBCASE("theta = 90 deg: exact everywhere") {
    const ContactAngle theta = ContactAngle::from_degrees(90.0);
    const StencilField st = differentiate(g, f, theta);
    const GeometrySnapshot s = snapshot(g, f, st, theta);
    for (int i = 0; i < g.cells(); ++i) {
      CHECK(s.u[i] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(s.v[i] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(s.H[i] == doctest::Approx(2.0).epsilon(1e-12));
      CHECK(s.nu_e[i] ==
            doctest::Approx(-g.cos_beta(i)).epsilon(1e-14));
      // ubar == u when the denominator is 1.
      CHECK(s.ubar[i] == doctest::Approx(s.u[i]).epsilon(1e-15));
    }
  }
  SUBCASE("theta = 60 deg: exact at cells untouched by the ghost") {
    const ContactAngle theta = ContactAngle::from_degrees(60.0);
    const StencilField st = differentiate(g, f, theta);
    const GeometrySnapshot s = snapshot(g, f, st, theta);
    for (int i = 0; i + 1 < g.n_beta(); ++i) {
      CHECK(s.u[i] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(s.v[i] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(s.H[i] == doctest::Approx(2.0).epsilon(1e-12));
      CHECK(s.nu_e[i] == doctest::Approx(-g.cos_beta(i)).epsilon(1e-14));
    }
  }
}

TEST_CASE("weingarten on caps: umbilic with both curvatures 1/r") {
  const ContactAngle theta = ContactAngle::from_degrees(60.0);
  const double r = 0.8;
  const Grid g = make_axisym_grid(128);
  const RadialField f = cap_field(g, theta, r);
  const StencilField st = differentiate(g, f, theta);
  const WeingartenField w = weingarten(g, f, st);
  const double tol = 30.0 * g.dbeta() * g.dbeta();
  for (int i = 0; i < g.cells(); ++i) {
    CHECK(w.k_beta[i] == doctest::Approx(1.0 / r).epsilon(tol));
    CHECK(w.k_ang[i] == doctest::Approx(1.0 / r).epsilon(tol));
    CHECK(w.hsq[i] == doctest::Approx(2.0 / (r * r)).epsilon(2.0 * tol));
  }
}

TEST_CASE("trace identity and Cauchy-Schwarz on random fields") {
  for (unsigned seed : {11u, 12u, 13u, 14u}) {
    const ContactAngle theta = ContactAngle::from_degrees(75.0);
    const Grid g = make_axisym_grid(48);
    const RadialField f = random_smooth_field(g, theta, seed, 0.1);
    const StencilField st = differentiate(g, f, theta);
    const GeometrySnapshot s = snapshot(g, f, st, theta);
    for (int i = 0; i < g.cells(); ++i) {
      // Same formula factored two ways.
      CHECK(std::abs(s.shape.trace[i] - s.H[i]) <=
            1e-12 * std::max(1.0, std::abs(s.H[i])));
      // n |h|^2 >= H^2 pointwise.
      CHECK(2.0 * s.shape.hsq[i] - s.H[i] * s.H[i] >=
            -1e-12 * std::max(1.0, s.H[i] * s.H[i]));
    }
  }
  // Same identities on a full 2D grid.
  for (unsigned seed : {21u, 22u}) {
    const ContactAngle theta = ContactAngle::from_degrees(130.0);
    const Grid g = make_full_grid(32, 12);
    const RadialField f = random_smooth_field(g, theta, seed, 0.05);
    const StencilField st = differentiate(g, f, theta);
    const GeometrySnapshot s = snapshot(g, f, st, theta);
    for (int k = 0; k < g.cells(); ++k) {
      CHECK(std::abs(s.shape.trace[k] - s.H[k]) <=
            1e-12 * std::max(1.0, std::abs(s.H[k])));
      CHECK(2.0 * s.shape.hsq[k] - s.H[k] * s.H[k] >=
            -1e-12 * std::max(1.0, s.H[k] * s.H[k]));
    }
  }
}

TEST_CASE("snapshot invariants on random fields") {
  for (unsigned seed : {31u, 32u, 33u}) {
    const ContactAngle theta = ContactAngle::from_degrees(45.0);
    const Grid g = make_axisym_grid(32);
    const RadialField f = random_smooth_field(g, theta, seed, 0.15);
    const StencilField st = differentiate(g, f, theta);
    const GeometrySnapshot s = snapshot(g, f, st, theta);
    const double lo = 1.0 - std::abs(theta.cos());
    const double hi = 1.0 + std::abs(theta.cos());
    for (int i = 0; i < g.cells(); ++i) {
      CHECK(s.v[i] >= 1.0);
      const double denom = 1.0 + theta.cos() * s.nu_e[i];
      CHECK(denom >= lo - 1e-12);
      CHECK(denom <= hi + 1e-12);
      CHECK(s.u[i] > 0.0);
      CHECK(s.u[i] ==
            doctest::Approx(s.rho[i] / s.v[i]).epsilon(1e-15));
    }
  }
}

TEST_CASE("non-mean-convex states are flagged, not silent") {
  const ContactAngle theta = ContactAngle::from_degrees(90.0);
  const Grid g = make_axisym_grid(64);
  RadialField f = cap_field(g, theta, 1.0);
  // Deep dimple at the pole.
  for (int i = 0; i < g.n_beta(); ++i) {
    f.phi[i] += 0.5 * std::exp(-std::pow(g.beta(i) / 0.15, 2));
  }
  const StencilField st = differentiate(g, f, theta);
  const GeometrySnapshot s = snapshot(g, f, st, theta);
  CHECK_FALSE(s.mean_convex);
  CHECK(s.min_H < 0.0);
}
