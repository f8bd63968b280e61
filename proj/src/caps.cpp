#include "capflow/caps.hpp"

#include <cmath>
#include <string>

#include "capflow/quadrature.hpp"

namespace capflow {

namespace {
constexpr double kQuadTol = 1e-10;
}

ContactAngle::ContactAngle(double radians, double margin) : theta_(radians) {
  if (!(margin > 0.0) || !(margin < kPi / 2.0)) {
    throw std::invalid_argument("contact angle margin must lie in (0, pi/2)");
  }
  if (!(radians >= margin) || !(radians <= kPi - margin)) {
    throw std::invalid_argument(
        "contact angle " + std::to_string(rad_to_deg(radians)) +
        " deg outside admissible range [" + std::to_string(rad_to_deg(margin)) +
        ", " + std::to_string(180.0 - rad_to_deg(margin)) + "] deg");
  }
  cos_ = std::cos(theta_);
  sin_ = std::sin(theta_);
}

ContactAngle ContactAngle::from_degrees(double degrees, double margin) {
  return ContactAngle(deg_to_rad(degrees), margin);
}

CapSpec::CapSpec(ContactAngle theta_in, double r_in, int n_in)
    : theta(theta_in), r(r_in), n(n_in) {
  if (!(r > 0.0)) throw std::invalid_argument("cap radius must be positive");
  if (n < 2) throw std::invalid_argument("surface dimension must be >= 2");
}

double cap_radial(const CapSpec& spec, double beta) {
  if (beta < 0.0 || beta > kPi / 2.0 + 1e-12) {
    throw std::invalid_argument("polar angle outside [0, pi/2]");
  }
  const double c = spec.theta.cos();
  const double s = spec.theta.sin();
  const double cb = std::cos(beta);
  return spec.r * (-c * cb + std::sqrt(c * c * cb * cb + s * s));
}

double cap_gauge(double norm_x, double height, const ContactAngle& theta) {
  if (!(norm_x > 0.0)) {
    throw std::invalid_argument("cap gauge is undefined at the origin");
  }
  if (height < 0.0) {
    throw std::invalid_argument("cap gauge needs a point with x_{n+1} >= 0");
  }
  const double c = theta.cos();
  const double s2 = theta.sin() * theta.sin();
  // Positive root of s^2 t^2 + 2 c <x,e> t - |x|^2 = 0 with <x,e> = -height.
  return (c * height +
          std::sqrt(c * c * height * height + s2 * norm_x * norm_x)) /
         s2;
}

double cap_gauge(std::span<const double> x, const ContactAngle& theta) {
  if (x.empty()) throw std::invalid_argument("empty point");
  double sq = 0.0;
  for (double xi : x) sq += xi * xi;
  return cap_gauge(std::sqrt(sq), x.back(), theta);
}

double b_theta(int n, const ContactAngle& theta) {
  if (n < 2) throw std::invalid_argument("surface dimension must be >= 2");
  if (n == 2) {
    const double c = theta.cos();
    return kPi * (1.0 - c) * (1.0 - c) * (2.0 + c) / 3.0;
  }
  return b_theta_quadrature(n, theta);
}

double b_theta_quadrature(int n, const ContactAngle& theta) {
  if (n < 2) throw std::invalid_argument("surface dimension must be >= 2");
  // Slice the cap region by height: the w = cos(alpha) substitution turns
  // int (1-w^2)^{n/2} dw into the analytic integrand sin^{n+1}(alpha).
  const double integral = adaptive_simpson(
      [n](double a) { return std::pow(std::sin(a), n + 1); }, 0.0,
      theta.radians(), kQuadTol);
  return ball_volume(n) * integral;
}

namespace {

CapConstants assemble(const CapSpec& spec, double b, double area) {
  const double c = spec.theta.cos();
  const double s = spec.theta.sin();
  const int n = spec.n;
  const double r = spec.r;
  CapConstants k{};
  k.b_theta = b;
  k.area = area;
  k.wetted_area = ball_volume(n) * std::pow(r * s, n);
  k.contact_length = sphere_area(n - 1) * std::pow(r * s, n - 1);
  k.total_H = static_cast<double>(n) / r * area;
  k.V1 = k.area - c * k.wetted_area;
  k.V2 = (k.total_H - c * s * k.contact_length) / n;
  return k;
}

}  // namespace

CapConstants cap_constants(const CapSpec& spec) {
  const double c = spec.theta.cos();
  const int n = spec.n;
  const double r = spec.r;
  if (n == 2) {
    CapConstants k{};
    k.b_theta = b_theta(2, spec.theta);
    k.area = 2.0 * kPi * r * r * (1.0 - c);
    k.wetted_area = kPi * r * r * spec.theta.sin() * spec.theta.sin();
    k.contact_length = 2.0 * kPi * r * spec.theta.sin();
    k.total_H = 4.0 * kPi * r * (1.0 - c);
    k.V1 = k.area - c * k.wetted_area;
    k.V2 = (k.total_H - c * spec.theta.sin() * k.contact_length) / n;
    return k;
  }
  const double area = sphere_area(n - 1) * std::pow(r, n) *
                      adaptive_simpson(
                          [n](double a) { return std::pow(std::sin(a), n - 1); },
                          0.0, spec.theta.radians(), kQuadTol);
  return assemble(spec, b_theta(n, spec.theta), area);
}

CapConstants cap_constants_quadrature(const CapSpec& spec) {
  const int n = spec.n;
  const double r = spec.r;
  const double area = sphere_area(n - 1) * std::pow(r, n) *
                      adaptive_simpson(
                          [n](double a) { return std::pow(std::sin(a), n - 1); },
                          0.0, spec.theta.radians(), kQuadTol);
  return assemble(spec, b_theta_quadrature(n, spec.theta), area);
}

}  // namespace capflow
