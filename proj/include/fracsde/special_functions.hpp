#pragma once

#include "fracsde/errors.hpp"

namespace fracsde::special {

// Parameters (beta, rho, a) of a Mittag-Leffler evaluation / kernel family
// y_{beta,rho}(t) = t^{rho-1} E_{beta,rho}(a t^beta).
struct MLIndex {
    double beta = 1.0;  // series order, in (0, 1]
    double rho = 1.0;   // second parameter, in (0, 2]
    double a = 0.0;     // scale coefficient, units 1/time^beta

    void validate() const {
        require(beta > 0.0 && beta <= 1.0, "MLIndex: beta must lie in (0, 1]");
        require(rho > 0.0 && rho <= 2.0, "MLIndex: rho must lie in (0, 2]");
    }
};

// Truncation/branch controls for Mittag-Leffler evaluation.
struct EvalConfig {
    double series_tol = 1e-15;   // absolute term cutoff for the power series
    int max_terms = 4000;        // series term cap
    double switch_radius = 10.0; // |z| threshold between series and asymptotic branches
    int asymptotic_terms = 8;    // inverse-power terms, subject to optimal truncation

    void validate() const {
        require(series_tol > 0.0, "EvalConfig: series_tol must be positive");
        require(max_terms >= 1, "EvalConfig: max_terms must be >= 1");
        require(switch_radius > 0.0, "EvalConfig: switch_radius must be positive");
        require(asymptotic_terms >= 1, "EvalConfig: asymptotic_terms must be >= 1");
    }
};

// Gamma function, Lanczos approximation (g=7, 9 coefficients) with reflection
// for x < 0.5. Relative error around 1e-13 away from the poles 0, -1, -2, ...
double gamma_eval(double x);

// log |Gamma(x)| for x > 0.
double log_gamma_pos(double x);

// 1/Gamma(x), with the convention 1/Gamma(-n) = 0 at the poles.
double gamma_reciprocal(double x);

// Two-parameter Mittag-Leffler function E_{beta,rho}(z), real z.
// Branches: power series for |z| <= switch_radius, inverse-power asymptotic
// for z < -switch_radius, exponential asymptotic for z > switch_radius. For
// negative z where the double-precision series loses too many digits to
// cancellation, an integral representation over a monotone kernel is used
// instead; both alternate branches fall back to it when their own error
// estimate misses series_tol.
double ml_eval(double beta, double rho, double z, const EvalConfig& cfg = {});

// y_{beta,rho}(t) = t^{rho-1} E_{beta,rho}(a t^beta), t > 0 (t = 0 allowed iff rho >= 1).
double ml_y_eval(const MLIndex& idx, double t, const EvalConfig& cfg = {});

// Phi(t) = t^{beta-gamma} E_{beta,beta-gamma+1}(a t^beta); requires beta-gamma > -1/2.
double phi_eval(double beta, double gamma, double a, double t, const EvalConfig& cfg = {});

namespace detail {

// Relaxed evaluator: accepts any beta > 0 and rho > 0 (no MLIndex range
// check). Used internally for kernel moments (rho up to ~3.5) and for the
// Gronwall bound (beta up to 3).
double ml_eval_any(double beta, double rho, double z, const EvalConfig& cfg = {});

// y_{beta,rho} without the MLIndex range check.
double ml_y_any(double beta, double rho, double a, double t, const EvalConfig& cfg = {});

// Individual branches, exposed for consistency tests.
double ml_series(double beta, double rho, double z, const EvalConfig& cfg);
double ml_asymptotic_negative(double beta, double rho, double z, const EvalConfig& cfg);
double ml_asymptotic_positive(double beta, double rho, double z, const EvalConfig& cfg);
double ml_integral_negative(double beta, double rho, double z);

}  // namespace detail

}  // namespace fracsde::special
