#pragma once

#include <vector>

#include "fracsde/sampled_path.hpp"

namespace fracsde::fraccalc {

// RL: I^p f = (t-s)^{p-1}/Gamma(p) convolved with f.
// Kochubei: J^p f = I^p (f - f(0+)).
enum class IntegralKind { RL, Kochubei };

// Piecewise-linear product integration: the kernel (t-s)^{p-1} is integrated
// exactly against the linear interpolant on every cell, which keeps second
// order accuracy through the diagonal singularity. p = 0 follows the
// convention I^0 f = f, J^0 f = f - f(0); p < 0 is rejected.
SampledPath frac_integral(IntegralKind kind, double p, const SampledPath& f);

// D^beta f = d/dt I^{1-beta} f, beta in (0, 1). Central differences on
// interior nodes, second-order one-sided stencils at the ends. When f(0) != 0
// the value at t = 0 carries the kernel singularity and is flagged +inf.
SampledPath rl_derivative(double beta, const SampledPath& f);

// Kochubei form of the Caputo derivative: d/dt J^{1-beta} f, beta in (0, 1).
SampledPath caputo_derivative(double beta, const SampledPath& f);

struct LaplaceResult {
    std::vector<double> values;             // trapezoid value of int_0^T f e^{-lambda t} dt
    std::vector<double> truncation_bounds;  // |f(T)| e^{-lambda T} / lambda tail estimate
};

// Finite-horizon Laplace transform probe. The truncation bound is always
// reported; callers wanting it negligible should arrange lambda*T >= 20.
LaplaceResult laplace_numeric(const SampledPath& f, const LaplaceGrid& grid);

// t -> A(t) E_beta(B Gamma(beta) t^beta) for non-negative, non-decreasing A.
SampledPath gronwall_bound(const SampledPath& A, double B, double beta);

// Solution of the scalar Caputo-type initial value problem with coefficient a
// and forcing f:
//   y(t) = y0 E_beta(a t^beta)
//        + int_0^t (t-s)^{beta-1} E_{beta,beta}(a (t-s)^beta) f(s) ds,
// by product integration with the singular kernel cells integrated in closed
// form. beta in (0, 1].
SampledPath solve_linear_fode(double a, double y0, const SampledPath& f, double beta);

}  // namespace fracsde::fraccalc
