#pragma once

#include <string>
#include <vector>

#include "fracsde/sampled_path.hpp"

namespace fracsde::spde {

// Coefficients of the Fourier-domain mode equation
//   del^beta U = -b |y|^alpha U + sigma |y|^nu del^gamma int U dw.
struct SpdeParams {
    double beta = 1.0;
    double gamma = 1.0;
    double alpha = 2.0;
    double nu = 1.0;
    double b = 1.0;
    double sigma = 0.0;

    void validate() const {
        require(beta > 0.0 && beta <= 1.0 && gamma > 0.0 && gamma <= 1.0,
                "SpdeParams: beta, gamma must lie in (0, 1]");
        require(alpha > 0.0 && alpha <= 2.0 && nu > 0.0 && nu <= 2.0,
                "SpdeParams: alpha, nu must lie in (0, 2]");
        require(b > 0.0, "SpdeParams: b must be positive");
    }
    bool classical() const { return beta - gamma > -0.5; }
};

enum class VerdictTag { WellPosed, NotWellPosed, WellPosedAtThreshold, Unknown,
                        NoClassicalSolution };

struct Verdict {
    VerdictTag tag = VerdictTag::Unknown;
    std::string reason;  // names the parameter branch that decided the call
};

const char* to_string(VerdictTag tag);

// Uniform-in-wavenumber second-moment boundedness classification.
// Equality comparisons (gamma = 1/2, alpha = nu/(1-eps)) are exact on the
// input values; callers wanting snapping must round before calling.
Verdict classify(const SpdeParams& p);

struct SecondMomentResult {
    SampledPath values;
    bool truncated = false;        // blow-up marker: values clipped at first overflow
    std::size_t first_overflow = 0;
};

// Second moment V(t) = E|U(t,y)|^2 of one Fourier mode with |U(0,y)|^2 = 1:
//   V(t) = E_beta^2(-b|y|^alpha t^beta)
//        + sigma^2 |y|^{2 nu} int_0^t (t-s)^{2(beta-gamma)}
//          E^2_{beta,beta-gamma+1}(-b|y|^alpha (t-s)^beta) V(s) ds,
// marched forward by graded product integration (lower-triangular kernel,
// one sweep). Values beyond 1e30 flag blow-up rather than throwing.
SecondMomentResult second_moment_volterra(const SpdeParams& p, double y_mag,
                                          const GridSpec& grid);

struct GrowthPoint {
    double y = 0.0;
    double ratio = 0.0;  // V(T)/V(0); +inf when the sweep blew up
};

// V(T)/V(0) across wavenumbers; an unbounded trend in |y| is empirical
// evidence against uniform second-moment boundedness.
std::vector<GrowthPoint> growth_probe(const SpdeParams& p, const std::vector<double>& y_list,
                                      double T, const GridSpec& grid);

// (sigma^2_inf(1,beta,gamma))^{1/(2-2 eps)} with eps = (gamma-1/2)/beta; the
// borderline admissibility test is b >= threshold_coefficient * |sigma|^{1/(1-eps)}.
double threshold_coefficient(double beta, double gamma);

}  // namespace fracsde::spde
