// numerics.hpp
// Small shared numerics: adaptive quadrature and derivative helpers.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace wst {

// Adaptive Simpson with absolute+relative termination.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10, int max_depth = 28);

// Centered finite difference.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Bisection root find on [a,b]; f(a), f(b) must bracket.
double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
              int max_iter = 200);

}  // namespace wst
