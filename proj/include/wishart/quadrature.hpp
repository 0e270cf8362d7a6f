#pragma once
// Adaptive integration on a finite interval, shared by the limiting-law
// integrals and the Laplace transform evaluators.

#include <functional>

namespace wishart {

// Integrates f over [a, b] to roughly abs_tol absolute accuracy using a 7-15
// Gauss-Kronrod pair, bisecting wherever the embedded error estimate is too
// large. Throws ConvergenceError if the estimate refuses to shrink.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

} // namespace wishart
