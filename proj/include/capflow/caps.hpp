#pragma once

#include <span>
#include <stdexcept>

#include "capflow/conventions.hpp"

namespace capflow {

// Contact angle in radians, restricted to [margin, pi - margin].  Near 0 or
// pi the cap degenerates and any fixed grid under-resolves it, so such
// angles are rejected at construction instead of producing garbage later.
class ContactAngle {
 public:
  static constexpr double kDefaultMargin = 5.0 * kPi / 180.0;

  explicit ContactAngle(double radians, double margin = kDefaultMargin);
  static ContactAngle from_degrees(double degrees,
                                   double margin = kDefaultMargin);

  double radians() const { return theta_; }
  double degrees() const { return rad_to_deg(theta_); }
  double cos() const { return cos_; }
  double sin() const { return sin_; }
  double cot() const { return cos_ / sin_; }

 private:
  double theta_;
  double cos_;
  double sin_;
};

// The spherical cap C_{theta,r}: portion of the sphere of radius r centered
// at r*cos(theta)*e inside the closed upper half-space.
struct CapSpec {
  ContactAngle theta;
  double r;  // sphere radius
  int n;     // surface dimension (>= 2)

  CapSpec(ContactAngle theta_in, double r_in, int n_in);
};

// Global quantities of a cap.  Scaling in r: area and wetted_area like r^n,
// contact_length and total_H like r^{n-1}, V1 like r^n, V2 like r^{n-1}.
struct CapConstants {
  double b_theta;         // volume of the unit cap region hat C_{theta,1}
  double area;            // |Sigma|
  double wetted_area;     // |hat dSigma| (region enclosed on the plane)
  double contact_length;  // |dSigma|
  double total_H;         // integral of H over Sigma, H = n/r
  double V1;              // area - cos(theta) * wetted_area
  double V2;              // (total_H - cos(theta) sin(theta) contact)/n
};

// Radial profile of the cap: the unique positive rho with
// |rho X - r cos(theta) e| = r for X at polar angle beta.
//   rho(beta) = r (-cos(theta) cos(beta) + sqrt(cos^2 cos^2 + sin^2)).
double cap_radial(const CapSpec& spec, double beta);

// Cap gauge: the unique s > 0 with the point on C_{theta,s}.  Positively
// 1-homogeneous in the point; rejects the origin.  Only |x| and the height
// x_{n+1} enter.
double cap_gauge(double norm_x, double height, const ContactAngle& theta);
double cap_gauge(std::span<const double> x, const ContactAngle& theta);

// Volume of the unit cap region.  Closed form for n = 2,
//   b_theta = pi (1-cos)^2 (2+cos) / 3,
// otherwise the solid-of-revolution integral omega_n * int_0^theta sin^{n+1}.
double b_theta(int n, const ContactAngle& theta);
double b_theta_quadrature(int n, const ContactAngle& theta);

// Cap constants; closed forms for n = 2, quadrature for the area otherwise.
CapConstants cap_constants(const CapSpec& spec);
// Same quantities with every integral done numerically (cross-check route).
CapConstants cap_constants_quadrature(const CapSpec& spec);

}  // namespace capflow
