#pragma once

#include <cmath>
#include <functional>

namespace capflow {

// Adaptive Simpson quadrature of f over [a,b] to the given relative
// tolerance (mixed with a small absolute floor so integrals through zero
// terminate).
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, int max_depth = 48);

}  // namespace capflow
