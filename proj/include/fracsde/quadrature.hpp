#pragma once

#include <functional>
#include <vector>

namespace fracsde::quad {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    std::size_t evaluations = 0;
};

using Integrand = std::function<double(double)>;

// Gauss(7)/Kronrod(15) pair on a single interval.
Result gk15(const Integrand& f, double a, double b);

// Adaptive bisection driven by the GK15 error estimate. Stops when the summed
// error estimate drops below max(abs_tol, rel_tol*|value|) or the interval
// budget is exhausted (converged=false in that case, best value returned).
Result integrate_adaptive(const Integrand& f, double a, double b,
                          double abs_tol = 0.0, double rel_tol = 1e-10,
                          std::size_t max_intervals = 4000);

// As above, but starting from a caller-supplied panel decomposition. Panels
// must be increasing; used to pre-resolve endpoint singularities and very
// long ranges before the adaptive pass takes over.
Result integrate_adaptive_panels(const Integrand& f, const std::vector<double>& panels,
                                 double abs_tol = 0.0, double rel_tol = 1e-10,
                                 std::size_t max_intervals = 4000);

// Mesh [a, b] with `count` panels graded toward `a`:
// x_i = a + (b-a)*(i/count)^exponent. exponent >= 1.
std::vector<double> graded_mesh(double a, double b, std::size_t count, double exponent);

// Fixed 8-point Gauss-Legendre on [a, b]; no error estimate.
double gl8(const Integrand& f, double a, double b);

// Nodes/weights of the 8-point Gauss-Legendre rule mapped to [0, 1].
struct UnitRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const UnitRule& gl8_unit();

}  // namespace fracsde::quad
