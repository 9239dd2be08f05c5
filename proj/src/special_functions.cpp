#include "fracsde/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fracsde/quadrature.hpp"

namespace fracsde::special {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kLogSqrt2Pi = 0.918938533204672741780329736405618;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Lanczos g = 7, 9 coefficients (Godfrey set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7};

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// sin(pi*x) / cos(pi*x) with argument reduction, accurate near integers.
double sinpi(double x) {
    double y = x - 2.0 * std::round(0.5 * x);  // y in [-1, 1]
    if (y > 0.5) y = 1.0 - y;
    if (y < -0.5) y = -1.0 - y;
    return std::sin(kPi * y);
}

double cospi(double x) {
    return sinpi(x + 0.5);
}

double lanczos_sum(double xm1) {
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (xm1 + static_cast<double>(i));
    return a;
}

double gamma_positive(double x) {
    // x >= 0.5 assumed.
    const double xm1 = x - 1.0;
    const double t = xm1 + kLanczosG + 0.5;
    if (x > 171.7) return kInf;
    return std::sqrt(2.0 * kPi) * std::pow(t, xm1 + 0.5) * std::exp(-t) * lanczos_sum(xm1);
}

}  // namespace

double gamma_eval(double x) {
    if (is_nonpositive_integer(x))
        throw domain_violation("gamma_eval: pole at x = " + std::to_string(x));
    if (!std::isfinite(x)) throw domain_violation("gamma_eval: non-finite argument");
    if (x < 0.5) return kPi / (sinpi(x) * gamma_positive(1.0 - x));
    return gamma_positive(x);
}

double log_gamma_pos(double x) {
    require(x > 0.0, "log_gamma_pos: x must be positive");
    if (x < 0.5) return log_gamma_pos(x + 1.0) - std::log(x);
    const double xm1 = x - 1.0;
    const double t = xm1 + kLanczosG + 0.5;
    return kLogSqrt2Pi + (xm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(xm1));
}

double gamma_reciprocal(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x >= 0.5) return std::exp(-log_gamma_pos(x));
    // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
    return sinpi(x) * std::exp(log_gamma_pos(1.0 - x)) / kPi;
}

namespace detail {

namespace {

// Absolute-value branch boundary: the alternating series is accepted while
// sum_k |z|^k / Gamma(beta k + rho) ~ exp(|z|^{1/beta}) keeps cancellation
// below ~1e-11 in double precision.
constexpr double kSeriesCancelExponent = 11.5;
// exp() overflow guard for the exponential branch.
constexpr double kExpOverflow = 709.0;

// 1/Gamma at arguments of the form rho - beta*k. Rounding in the argument
// turns exact poles (where the term must vanish) into tiny nonzero values
// that would derail the optimal-truncation stopping rule, so snap them.
double rgamma_snapped(double x) {
    if (x < 0.5 && std::abs(x - std::round(x)) < 1e-9) return 0.0;
    return gamma_reciprocal(x);
}

double ml_series_impl(double beta, double rho, double z, const EvalConfig& cfg) {
    double sum = gamma_reciprocal(rho);
    double comp = 0.0;  // Kahan compensation
    const double ln_az = std::log(std::abs(z));
    const double sign = z < 0.0 ? -1.0 : 1.0;
    double sgn_k = 1.0;
    double prev_mag = kInf;
    for (int k = 1; k <= cfg.max_terms; ++k) {
        sgn_k *= sign;
        const double mag = std::exp(static_cast<double>(k) * ln_az -
                                    log_gamma_pos(beta * static_cast<double>(k) + rho));
        const double term = sgn_k * mag;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (mag < cfg.series_tol && mag <= prev_mag) return sum;
        if (mag > 0.0) prev_mag = mag;
        if (std::isinf(sum)) return sum;  // value genuinely exceeds double range
    }
    throw numerical_failure("ml_eval: series did not reach series_tol within max_terms");
}

// Divergent-tail expansion E_{beta,rho}(-t) = sum_{k>=1} (-1)^{k+1} t^{-k} / Gamma(rho - beta k),
// truncated before the smallest term starts to grow. err_out gets the first
// omitted (or first growing) term magnitude.
double ml_asympt_neg_impl(double beta, double rho, double z, const EvalConfig& cfg,
                          double* err_out) {
    const double t = -z;
    double sum = 0.0;
    double prev_mag = kInf;
    double tpow = 1.0;
    double err = 0.0;
    int k = 1;
    for (; k <= cfg.asymptotic_terms; ++k) {
        tpow /= t;
        const double g = rgamma_snapped(rho - beta * static_cast<double>(k));
        const double term = ((k % 2 == 1) ? 1.0 : -1.0) * tpow * g;
        const double mag = std::abs(term);
        if (mag != 0.0 && mag > prev_mag) {
            err = mag;  // optimal truncation: stop before terms grow
            break;
        }
        sum += term;
        if (mag != 0.0) prev_mag = mag;
    }
    if (k > cfg.asymptotic_terms) {
        // estimate the first omitted term
        const double g = rgamma_snapped(rho - beta * static_cast<double>(k));
        err = std::abs(tpow / t * g);
        if (err == 0.0) err = std::abs(tpow / (t * t) *
                                       rgamma_snapped(rho - beta * static_cast<double>(k + 1)));
    }
    if (err_out) *err_out = err;
    return sum;
}

// Integral representation over a monotone kernel, valid for 0 < beta < 1,
// z < 0, rho < 1 + beta. Larger rho is first reduced through
// E_{beta,rho}(z) = (E_{beta,rho-beta}(z) - 1/Gamma(rho-beta)) / z.
double gll_integral(double beta, double rho, double z) {
    const double c = cospi(beta);
    const double s = sinpi(beta);
    const double expo = (1.0 - rho) / beta;
    auto kernel = [=](double r) {
        const double k1 = std::pow(r, expo) * std::exp(-std::pow(r, 1.0 / beta)) / (kPi * beta);
        const double k2 = r * sinpi(1.0 - rho) - z * sinpi(1.0 - rho + beta);
        const double d = r - z * c;
        const double denom = d * d + z * z * s * s;
        return k1 * k2 / denom;
    };
    const double R = std::max({1.0, 2.0 * std::abs(z), std::pow(42.0, beta)});
    std::vector<double> panels = quad::graded_mesh(0.0, std::min(1.0, 0.25 * R), 6, 3.0);
    panels.push_back(R);
    if (c < 0.0) {  // rational-part peak at r = |z| |cos(pi beta)| for beta > 1/2
        const double peak = z * c;
        const double width = std::max(std::abs(z) * s, 1e-3 * peak);
        for (double p : {peak - 2.0 * width, peak - 0.5 * width, peak,
                         peak + 0.5 * width, peak + 2.0 * width, 2.0 * peak})
            if (p > 0.0 && p < R) panels.push_back(p);
    }
    std::sort(panels.begin(), panels.end());
    panels.erase(std::unique(panels.begin(), panels.end()), panels.end());
    const auto res = quad::integrate_adaptive_panels(kernel, panels, 1e-18, 5e-14, 3000);
    return res.value;
}

double closed_form_integer_rho(double rho, double z) {
    // E_{1,m} for m = 1, 2, 3; stable via expm1.
    if (rho == 1.0) return std::exp(z);
    if (rho == 2.0) return std::expm1(z) / z;
    return (std::expm1(z) - z) / (z * z);  // rho == 3
}

}  // namespace

double ml_series(double beta, double rho, double z, const EvalConfig& cfg) {
    return ml_series_impl(beta, rho, z, cfg);
}

double ml_asymptotic_negative(double beta, double rho, double z, const EvalConfig& cfg) {
    return ml_asympt_neg_impl(beta, rho, z, cfg, nullptr);
}

double ml_asymptotic_positive(double beta, double rho, double z, const EvalConfig& cfg) {
    const double root = std::pow(z, 1.0 / beta);
    const double lead = std::pow(z, (1.0 - rho) / beta) * std::exp(root) / beta;
    // Same inverse-power tail as on the negative side, with z^{-k} signs.
    double sum = 0.0;
    double prev_mag = kInf;
    double zpow = 1.0;
    for (int k = 1; k <= cfg.asymptotic_terms; ++k) {
        zpow /= z;
        const double term = zpow * rgamma_snapped(rho - beta * static_cast<double>(k));
        const double mag = std::abs(term);
        if (mag != 0.0 && mag > prev_mag) break;
        sum += term;
        if (mag != 0.0) prev_mag = mag;
    }
    return lead - sum;
}

double ml_integral_negative(double beta, double rho, double z) {
    require(beta > 0.0 && beta < 1.0 && z < 0.0,
            "ml_integral_negative: requires beta in (0,1) and z < 0");
    int reductions = 0;
    double r = rho;
    while (r >= 1.0 + beta - 0.05) {
        r -= beta;
        ++reductions;
    }
    double value = gll_integral(beta, r, z);
    for (int i = 0; i < reductions; ++i) {
        value = (value - gamma_reciprocal(r)) / z;
        r += beta;
    }
    return value;
}

double ml_eval_any(double beta, double rho, double z, const EvalConfig& cfg) {
    cfg.validate();
    require(beta > 0.0 && rho > 0.0, "ml_eval: beta and rho must be positive");
    require(std::isfinite(z), "ml_eval: non-finite argument");
    if (z == 0.0) return gamma_reciprocal(rho);
    if (beta == 1.0 && (rho == 1.0 || rho == 2.0 || rho == 3.0) && std::abs(z) >= 0.5)
        return closed_form_integer_rho(rho, z);

    if (z > 0.0) {
        if (std::pow(z, 1.0 / beta) > kExpOverflow) return kInf;
        if (z <= cfg.switch_radius) return ml_series_impl(beta, rho, z, cfg);
        return ml_asymptotic_positive(beta, rho, z, cfg);
    }

    const double t = -z;
    if (t <= cfg.switch_radius) {
        if (beta >= 1.0 || std::pow(t, 1.0 / beta) <= kSeriesCancelExponent)
            return ml_series_impl(beta, rho, z, cfg);
        return ml_integral_negative(beta, rho, z);
    }
    if (beta < 1.0) {
        double err = 0.0;
        double v = ml_asympt_neg_impl(beta, rho, z, cfg, &err);
        const double accept = std::max(1e-12, cfg.series_tol);
        if (err > accept && cfg.asymptotic_terms < 32) {
            // let the expansion run to its optimal truncation before paying
            // for the integral representation
            EvalConfig extended = cfg;
            extended.asymptotic_terms = 32;
            v = ml_asympt_neg_impl(beta, rho, z, extended, &err);
        }
        if (err <= accept) return v;
        return ml_integral_negative(beta, rho, z);
    }
    if (beta == 1.0) {
        // Fractional rho with a large negative argument: the inverse-power
        // tail is the best available branch here (absolute error ~ e^z).
        return ml_asympt_neg_impl(beta, rho, z, cfg, nullptr);
    }
    if (std::pow(t, 1.0 / beta) <= kSeriesCancelExponent)
        return ml_series_impl(beta, rho, z, cfg);
    throw numerical_failure("ml_eval: beta > 1 with large negative argument is unsupported");
}

double ml_y_any(double beta, double rho, double a, double t, const EvalConfig& cfg) {
    if (t == 0.0) {
        require(rho >= 1.0, "ml_y_eval: singular at t = 0 for rho < 1");
        return rho == 1.0 ? ml_eval_any(beta, rho, 0.0, cfg) : 0.0;
    }
    require(t > 0.0, "ml_y_eval: t must be >= 0");
    return std::pow(t, rho - 1.0) * ml_eval_any(beta, rho, a * std::pow(t, beta), cfg);
}

}  // namespace detail

double ml_eval(double beta, double rho, double z, const EvalConfig& cfg) {
    MLIndex{beta, rho, 0.0}.validate();
    return detail::ml_eval_any(beta, rho, z, cfg);
}

double ml_y_eval(const MLIndex& idx, double t, const EvalConfig& cfg) {
    idx.validate();
    cfg.validate();
    return detail::ml_y_any(idx.beta, idx.rho, idx.a, t, cfg);
}

double phi_eval(double beta, double gamma, double a, double t, const EvalConfig& cfg) {
    require(beta > 0.0 && beta <= 1.0 && gamma > 0.0 && gamma <= 1.0,
            "phi_eval: beta, gamma must lie in (0, 1]");
    require(beta - gamma > -0.5, "phi_eval: requires beta - gamma > -1/2");
    cfg.validate();
    return detail::ml_y_any(beta, beta - gamma + 1.0, a, t, cfg);
}

}  // namespace fracsde::special
