#include "fracsde/frac_calculus.hpp"

#include <cmath>
#include <limits>

#include "fracsde/product_integration.hpp"
#include "fracsde/special_functions.hpp"

namespace fracsde::fraccalc {

namespace {

// Exact moments of the power kernel u^{p-1}/Gamma(p).
pint::CellMoments power_kernel_moments(double p, double dt, std::size_t n) {
    pint::CellMoments m;
    m.dt = dt;
    m.m0.assign(n + 1, 0.0);
    m.m1.assign(n + 1, 0.0);
    const double rg = special::gamma_reciprocal(p);
    const double c0 = rg * std::pow(dt, p) / p;
    const double c1 = rg * std::pow(dt, p + 1.0) / (p + 1.0);
    double dp_prev = 0.0, dp1_prev = 0.0;
    for (std::size_t d = 1; d <= n; ++d) {
        const double x = static_cast<double>(d);
        const double dp = std::pow(x, p);
        const double dp1 = std::pow(x, p + 1.0);
        m.m0[d] = c0 * (dp - dp_prev);
        m.m1[d] = c1 * (dp1 - dp1_prev);
        dp_prev = dp;
        dp1_prev = dp1;
    }
    return m;
}

SampledPath subtract_initial(const SampledPath& f) {
    std::vector<double> v = f.values();
    const double f0 = f.initial_value();
    for (double& x : v) x -= f0;
    return SampledPath(f.horizon(), std::move(v));
}

// d/dt on the grid: central differences inside, one-sided second order at the
// ends.
std::vector<double> differentiate(const std::vector<double>& g, double dt) {
    const std::size_t n = g.size() - 1;
    std::vector<double> out(n + 1);
    out[0] = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * dt);
    for (std::size_t i = 1; i < n; ++i) out[i] = (g[i + 1] - g[i - 1]) / (2.0 * dt);
    out[n] = (3.0 * g[n] - 4.0 * g[n - 1] + g[n - 2]) / (2.0 * dt);
    return out;
}

}  // namespace

SampledPath frac_integral(IntegralKind kind, double p, const SampledPath& f) {
    require(p >= 0.0, "frac_integral: order p must be non-negative");
    if (p == 0.0) return kind == IntegralKind::RL ? f : subtract_initial(f);
    const auto m = power_kernel_moments(p, f.dt(), f.n_steps());
    if (kind == IntegralKind::Kochubei)
        return SampledPath(f.horizon(), pint::convolve_linear(subtract_initial(f).values(), m));
    return SampledPath(f.horizon(), pint::convolve_linear(f.values(), m));
}

SampledPath rl_derivative(double beta, const SampledPath& f) {
    require(beta > 0.0 && beta < 1.0, "rl_derivative: beta must lie in (0, 1)");
    const SampledPath g = frac_integral(IntegralKind::RL, 1.0 - beta, f);
    std::vector<double> d = differentiate(g.values(), f.dt());
    if (f.initial_value() != 0.0)
        d[0] = std::numeric_limits<double>::infinity();  // kernel singularity at t = 0
    return SampledPath(f.horizon(), std::move(d));
}

SampledPath caputo_derivative(double beta, const SampledPath& f) {
    require(beta > 0.0 && beta < 1.0, "caputo_derivative: beta must lie in (0, 1)");
    const SampledPath g = frac_integral(IntegralKind::Kochubei, 1.0 - beta, f);
    return SampledPath(f.horizon(), differentiate(g.values(), f.dt()));
}

LaplaceResult laplace_numeric(const SampledPath& f, const LaplaceGrid& grid) {
    grid.validate();
    require(f.all_finite(), "laplace_numeric: path must be finite at every node");
    const std::size_t n = f.n_steps();
    const double dt = f.dt();
    LaplaceResult out;
    out.values.reserve(grid.lambdas.size());
    out.truncation_bounds.reserve(grid.lambdas.size());
    for (double lambda : grid.lambdas) {
        // trapezoid of f(t) e^{-lambda t}; e^{-lambda dt} applied recursively
        const double decay = std::exp(-lambda * dt);
        double w = 1.0;
        double acc = 0.5 * f[0];
        for (std::size_t i = 1; i < n; ++i) {
            w *= decay;
            acc += f[i] * w;
        }
        w *= decay;
        acc += 0.5 * f[n] * w;
        out.values.push_back(acc * dt);
        out.truncation_bounds.push_back(std::abs(f[n]) * w / lambda);
    }
    return out;
}

SampledPath gronwall_bound(const SampledPath& A, double B, double beta) {
    require(B > 0.0, "gronwall_bound: B must be positive");
    require(beta > 0.0, "gronwall_bound: beta must be positive");
    double prev = 0.0;
    for (std::size_t i = 0; i < A.n_nodes(); ++i) {
        require(A[i] >= 0.0, "gronwall_bound: A must be non-negative");
        require(A[i] >= prev, "gronwall_bound: A must be non-decreasing");
        prev = A[i];
    }
    const double g = special::gamma_eval(beta);
    std::vector<double> v(A.n_nodes());
    for (std::size_t i = 0; i < A.n_nodes(); ++i)
        v[i] = A[i] * special::detail::ml_eval_any(beta, 1.0, B * g * std::pow(A.node(i), beta));
    return SampledPath(A.horizon(), std::move(v));
}

SampledPath solve_linear_fode(double a, double y0, const SampledPath& f, double beta) {
    require(beta > 0.0 && beta <= 1.0, "solve_linear_fode: beta must lie in (0, 1]");
    const std::size_t n = f.n_steps();
    const double dt = f.dt();

    // Kernel y_{beta,beta}(u) = u^{beta-1} E_{beta,beta}(a u^beta). Its cell
    // moments come out in closed form from the convolution identity
    // int_0^x y_{b,r} = y_{b,r+1} and int_0^x u y_{b,r} = x y_{b,r+1} - y_{b,r+2}.
    auto Y1 = [&](double u) { return special::detail::ml_y_any(beta, beta + 1.0, a, u); };
    auto Y2 = [&](double u) { return special::detail::ml_y_any(beta, beta + 2.0, a, u); };
    const auto m = pint::moments_from_antiderivatives(
        Y1, [&](double u) { return u * Y1(u) - Y2(u); }, dt, n);

    std::vector<double> y = pint::convolve_linear(f.values(), m);
    for (std::size_t i = 0; i <= n; ++i)
        y[i] += y0 * special::detail::ml_eval_any(beta, 1.0, a * std::pow(f.node(i), beta));
    return SampledPath(f.horizon(), std::move(y));
}

}  // namespace fracsde::fraccalc
