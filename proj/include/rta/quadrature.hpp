#pragma once

#include "rta/types.hpp"

#include <functional>

namespace rta {

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by Newton
// iteration on the Legendre polynomial.
struct GaussLegendreRule {
    RealVector nodes;
    RealVector weights;
};

const GaussLegendreRule& gauss_legendre(int order);

// Adaptive panel-subdivision Gauss-Legendre quadrature of a vector-valued
// integrand on [a, b]. Panels are accepted when the whole-panel estimate and
// the two half-panel estimates agree to the panel's share of the tolerance.
// rel_tol is relative to the norm of the accumulated integral (with a tiny
// absolute floor so an identically-zero integrand terminates).
RealVector integrate_adaptive(const std::function<RealVector(double)>& f, double a,
                              double b, double rel_tol = 1e-9, int max_depth = 48);

double integrate_adaptive_scalar(const std::function<double(double)>& f, double a,
                                 double b, double rel_tol = 1e-9, int max_depth = 48);

}  // namespace rta
