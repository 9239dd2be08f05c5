#include "fracsde/fou_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fracsde/quadrature.hpp"
#include "fracsde/special_functions.hpp"

namespace fracsde::fou {

namespace {

double variance_integrand(double beta, double gamma, double a, double s) {
    const double e = special::detail::ml_eval_any(beta, beta - gamma + 1.0, -a * std::pow(s, beta));
    return std::pow(s, 2.0 * (beta - gamma)) * e * e;
}

// Panel layout for [0, t]: mesh graded into the s -> 0 singularity with
// exponent max(1, 1/(2(beta-gamma)+1)), then geometric panels out to t.
std::vector<double> variance_panels(double beta, double gamma, double t) {
    const double r = 2.0 * (beta - gamma) + 1.0;
    const double grading = std::max(1.0, 1.0 / r);
    const double head = std::min(1.0, t);
    std::vector<double> panels = quad::graded_mesh(0.0, head, 8, grading);
    double x = head;
    while (x < t) {
        x = std::min(t, 2.0 * x);
        panels.push_back(x);
    }
    return panels;
}

}  // namespace

double fou_mean(const FouParams& p, double t) {
    p.validate();
    require(t >= 0.0, "fou_mean: t must be non-negative");
    return p.X0 * special::detail::ml_eval_any(p.beta, 1.0, -p.a * std::pow(t, p.beta));
}

double fou_variance(const FouParams& p, double t) {
    p.validate();
    require(p.classical(),
            "fou_variance: beta - gamma <= -1/2, second moment undefined (generalized regime)");
    require(t > 0.0, "fou_variance: t must be positive");
    auto f = [&](double s) { return variance_integrand(p.beta, p.gamma, p.a, s); };
    const auto res =
        quad::integrate_adaptive_panels(f, variance_panels(p.beta, p.gamma, t), 0.0, 1e-7, 6000);
    return res.value;
}

double fou_limit_variance(double a, double beta, double gamma) {
    require(beta > 0.0 && beta <= 1.0 && gamma > 0.0 && gamma <= 1.0,
            "fou_limit_variance: beta, gamma must lie in (0, 1]");
    require(beta - gamma > -0.5, "fou_limit_variance: requires beta - gamma > -1/2");
    require(a > 0.0, "fou_limit_variance: requires a > 0");
    require(gamma > 0.5,
            "fou_limit_variance: variance integral diverges at infinity for gamma <= 1/2 "
            "(log or power growth regime)");

    // The integrand behaves like
    //   s^{-2g}/(a Gamma(1-g))^2 - 2 s^{-2g-b} a^{-3}/(Gamma(1-g) Gamma(1-g-b)) + ...
    // for large s; integrate to a cutoff, add the two algebraic tail terms,
    // and double the cutoff until the result stabilizes.
    const double scale = std::pow(a, -1.0 / beta);
    const double rg = special::gamma_reciprocal(1.0 - gamma);
    const double rg2 = special::gamma_reciprocal(1.0 - gamma - beta);
    auto f = [&](double s) { return variance_integrand(beta, gamma, a, s); };
    auto tail_from = [&](double s) {
        const double lead = std::pow(s, 1.0 - 2.0 * gamma) / (2.0 * gamma - 1.0) * rg * rg /
                            (a * a);
        const double next = -2.0 * std::pow(s, 1.0 - 2.0 * gamma - beta) /
                            (2.0 * gamma + beta - 1.0) * rg * rg2 / (a * a * a);
        return lead + next;
    };
    double cutoff = 64.0 * scale;
    double prev = 0.0;
    for (int iter = 0; iter < 16; ++iter) {
        const auto head =
            quad::integrate_adaptive_panels(f, variance_panels(beta, gamma, cutoff), 0.0, 1e-8,
                                            8000);
        const double value = head.value + tail_from(cutoff);
        if (iter > 0 && std::abs(value - prev) <= 3e-7 * std::abs(value)) return value;
        prev = value;
        cutoff *= 2.0;
    }
    return prev;
}

Regime regime_classify(double beta, double gamma) {
    require(beta > 0.0 && beta <= 1.0 && gamma > 0.0 && gamma <= 1.0,
            "regime_classify: beta, gamma must lie in (0, 1]");
    if (beta - gamma <= -0.5) return {RegimeTag::GeneralizedOnly, 0.0};
    if (gamma > 0.5) return {RegimeTag::ConvergentGaussian, 0.0};
    if (gamma == 0.5) return {RegimeTag::LogGrowth, 0.0};
    return {RegimeTag::PowerGrowth, 1.0 - 2.0 * gamma};
}

double fsode_variance(double beta, double gamma, double t) {
    require(beta > 0.0 && beta <= 1.0 && gamma > 0.0 && gamma <= 1.0,
            "fsode_variance: beta, gamma must lie in (0, 1]");
    require(beta - gamma > -0.5, "fsode_variance: requires beta - gamma > -1/2");
    require(t > 0.0, "fsode_variance: t must be positive");
    const double r = 2.0 * (beta - gamma) + 1.0;
    const double g = special::gamma_eval(1.0 + beta - gamma);
    return std::pow(t, r) / (r * g * g);
}

}  // namespace fracsde::fou
