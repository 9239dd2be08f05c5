#pragma once

#include "fracsde/errors.hpp"

namespace fracsde::fou {

// Parameters of the time-fractional Ornstein-Uhlenbeck process
// del^beta X = -a X + del^gamma dw, X(0) = X0.
struct FouParams {
    double X0 = 0.0;
    double a = 1.0;  // reversion coefficient, units 1/time^beta
    double beta = 1.0;
    double gamma = 1.0;

    void validate() const {
        require(beta > 0.0 && beta <= 1.0 && gamma > 0.0 && gamma <= 1.0,
                "FouParams: beta, gamma must lie in (0, 1]");
    }
    bool classical() const { return beta - gamma > -0.5; }
};

enum class RegimeTag { GeneralizedOnly, ConvergentGaussian, LogGrowth, PowerGrowth };

// Long-time classification of the process variance.
struct Regime {
    RegimeTag tag = RegimeTag::ConvergentGaussian;
    double exponent = 0.0;  // variance growth exponent 1-2*gamma for PowerGrowth
};

// mu(t) = X0 E_beta(-a t^beta).
double fou_mean(const FouParams& p, double t);

// sigma^2(t) = int_0^t s^{2(beta-gamma)} E^2_{beta,beta-gamma+1}(-a s^beta) ds
// by adaptive quadrature on a mesh graded into the endpoint singularity.
// Relative error target 1e-6. Requires beta - gamma > -1/2.
double fou_variance(const FouParams& p, double t);

// sigma^2_inf(a, beta, gamma): the t -> infinity limit of fou_variance,
// finite exactly when gamma > 1/2. Quadrature to a cutoff plus the algebraic
// s^{-2gamma} tail correction; relative error target 1e-6.
double fou_limit_variance(double a, double beta, double gamma);

// GeneralizedOnly if beta-gamma <= -1/2; else ConvergentGaussian (gamma > 1/2),
// LogGrowth (gamma = 1/2, exact comparison), PowerGrowth{1-2gamma} (gamma < 1/2).
Regime regime_classify(double beta, double gamma);

// Var X(t) = t^{2(beta-gamma)+1} / ((2(beta-gamma)+1) Gamma(1+beta-gamma)^2)
// for the pure fractional-noise equation (a = 0).
double fsode_variance(double beta, double gamma, double t);

}  // namespace fracsde::fou
