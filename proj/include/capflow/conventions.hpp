#pragma once

// Geometric conventions, fixed once for the whole library.
//
// Ambient space: the closed upper half-space { x in R^{n+1} : x_{n+1} >= 0 }.
// The distinguished unit vector is e = (0,...,0,-1), so <x,e> = -x_{n+1}.
//
// A star-shaped surface is a radial graph over the closed upper half-sphere:
//   x(beta, omega) = rho * (sin(beta) omega, cos(beta)),   omega in S^{n-1},
// with beta = 0 on the symmetry axis and beta = pi/2 on the boundary plane.
//
// nu is the outward unit normal.  H is the trace of the Weingarten map
// (sum of principal curvatures), so H = n/r on a sphere of radius r.
//
// The contact angle theta in (0,pi) is encoded by <nu,e> = -cos(theta) on
// the boundary circle; theta = pi/2 is the orthogonal (hemisphere) case.
// The spherical cap C_{theta,r} is the portion of the sphere of radius r
// centered at r*cos(theta)*e that lies in the closed upper half-space.

#include <cmath>
#include <numbers>

namespace capflow {

inline constexpr double kPi = std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Volume of the unit m-ball.
inline double ball_volume(int m) {
  return std::pow(kPi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

// Area of the unit sphere S^m in R^{m+1}.
inline double sphere_area(int m) {
  return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

}  // namespace capflow
