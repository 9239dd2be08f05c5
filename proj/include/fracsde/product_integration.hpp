#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fracsde::pint {

// Cell moments of a convolution kernel K(u) on the lag grid u in
// [(d-1)dt, d dt], d = 1..n:
//   m0[d] = int K(u) du,   m1[d] = int u K(u) du.
struct CellMoments {
    std::vector<double> m0;  // index 0 unused
    std::vector<double> m1;
    double dt = 0.0;
};

// Exact moments for kernels with a closed-form antiderivative pair:
//   A(u)  = int_0^u K,   P(u) = int_0^u v K(v) dv.
CellMoments moments_from_antiderivatives(const std::function<double(double)>& A,
                                         const std::function<double(double)>& P, double dt,
                                         std::size_t n);

// int_0^dt u^h S(u) du for h > -1 and smooth S: the substitution
// u = dt w^{1/(1+h)} absorbs the weight exactly, leaving a plain Gauss
// integral of S along clustered nodes (exact when S is constant).
double weighted_singular_integral(const std::function<double(double)>& S, double h, double dt);

// Numeric moments for a kernel K(u) = u^h S(u) with smooth S and h > -1
// (e.g. Phi^2, which has no closed-form antiderivative): the diagonal cell
// goes through weighted_singular_integral, the rest through Gauss-Legendre.
CellMoments moments_singular_kernel(const std::function<double(double)>& S, double h,
                                    double dt, std::size_t n);

// Product integration of K against the piecewise-linear interpolant of f:
//   out[i] = sum_{j<i} int_{cell j} K(t_i - s) f_lin(s) ds.
std::vector<double> convolve_linear(std::span<const double> f, const CellMoments& m);

// Same, but only the contribution of cells j < i_max to node i_max (single row).
double convolve_linear_at(std::span<const double> f, const CellMoments& m, std::size_t i);

}  // namespace fracsde::pint
