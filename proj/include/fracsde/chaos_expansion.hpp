#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "fracsde/sampled_path.hpp"

namespace fracsde::chaos {

// Sparse multi-index over basis modes k >= 1; entries sorted by mode,
// multiplicities >= 1.
struct MultiIndex {
    std::vector<std::pair<std::size_t, std::size_t>> entries;  // (mode, multiplicity)

    static MultiIndex empty() { return {}; }
    static MultiIndex single(std::size_t k) { return {{{k, 1}}}; }

    std::size_t order() const {
        std::size_t n = 0;
        for (const auto& [k, m] : entries) n += m;
        return n;
    }
    std::size_t multiplicity(std::size_t k) const {
        for (const auto& [mode, m] : entries)
            if (mode == k) return m;
        return 0;
    }
    // alpha - e_k (mode k must be present)
    MultiIndex lower(std::size_t k) const;
    void validate() const;

    bool operator==(const MultiIndex& o) const { return entries == o.entries; }
    bool operator<(const MultiIndex& o) const { return entries < o.entries; }
};

// Weight family q_k = c k^{-p} with 0 < q_k < 1 (enforced by c < 1, p >= 0).
struct WeightSequence {
    double c = 0.5;
    double p = 1.0;

    void validate() const {
        require(c > 0.0 && c < 1.0, "WeightSequence: need 0 < c < 1");
        require(p >= 0.0, "WeightSequence: need p >= 0");
    }
    double q(std::size_t k) const;
    // q^alpha = prod_k q_k^{alpha_k}
    double weight(const MultiIndex& alpha) const;
};

// Parameters of the time-fractional geometric Brownian motion
// del^beta X = a X + sigma del^gamma int X dw, X(0) = X0.
struct GbmParams {
    double X0 = 1.0;
    double a = 0.0;
    double sigma = 0.0;
    double beta = 1.0;
    double gamma = 1.0;

    void validate() const {
        require(beta > 0.0 && beta <= 1.0 && gamma > 0.0 && gamma <= 1.0,
                "GbmParams: beta, gamma must lie in (0, 1]");
    }
    bool classical() const { return beta - gamma > -0.5; }
};

// Chaos-expansion coefficients indexed by multi-index, all |alpha| <= N
// supported on modes <= K, in graded-lexicographic enumeration order.
class ChaosTable {
public:
    ChaosTable(double T, std::size_t K, std::size_t N) : T_(T), K_(K), N_(N) {}

    double horizon() const { return T_; }
    std::size_t basis_size() const { return K_; }
    std::size_t max_order() const { return N_; }

    void insert(MultiIndex alpha, SampledPath values);
    const SampledPath* find(const MultiIndex& alpha) const;
    const std::vector<std::pair<MultiIndex, SampledPath>>& entries() const { return entries_; }

private:
    double T_;
    std::size_t K_, N_;
    std::vector<std::pair<MultiIndex, SampledPath>> entries_;
    std::map<MultiIndex, std::size_t> index_;
};

// Cosine basis: m_1 = 1/sqrt(T), m_k = sqrt(2/T) cos(pi t (k-1)/T) for k >= 2.
double cosine_basis_eval(std::size_t k, double t, double T);

// Probabilists' Hermite polynomial He_n by the three-term recurrence.
double hermite_eval(int n, double x);

// Im_k(t) = int_0^t m_k(s) ds in closed form.
double bm_chaos_coeff(std::size_t k, double t, double T);

// First-order chaos coefficient I^{1-(gamma-beta)} m_k (t) of the generalized
// fractional-noise process, in closed form through incomplete cosine/sine
// power integrals.
double genproc_coeff(std::size_t k, double t, double T, double beta, double gamma);

// sqrt(sum_k q_k x_k^2) over first-order scalar coefficients x_1..x_K.
double weighted_norm(std::span<const double> coeffs, const WeightSequence& q);

// sqrt(sum_alpha q^alpha ||X_alpha||^2_{L2(0,T)}) over a chaos table
// (trapezoid discrete L2 norm per entry).
double weighted_norm(const ChaosTable& table, const WeightSequence& q);

// E X^2(t) by the Ito-isometry layer recursion
//   M_0(s) = E_beta^2(a s^beta),  M_n(t) = int_0^t Phi^2(t-s) M_{n-1}(s) ds,
//   E X^2 = X0^2 sum_n sigma^{2n} M_n(t),
// truncated when the analytic layer bound falls below tol (relative).
double gbm_second_moment(const GbmParams& p, double t, double tol, std::size_t n_grid = 512);

// Propagator table: X_empty = X0 E_beta(a t^beta) and, for |alpha| > 0,
//   X_alpha(t) = sigma sum_k sqrt(alpha_k)
//                int_0^t Phi(t-s) X_{alpha-e_k}(s) m_k(s) ds,
// for all alpha with |alpha| <= N on modes <= K. Exists for every
// beta, gamma in (0,1] (chaos mode); no square-integrability restriction.
ChaosTable gbm_propagator(const GbmParams& p, std::size_t K, std::size_t N,
                          const GridSpec& grid, std::size_t max_entries = 250000);

namespace detail {
// C(kappa,x) = int_0^x v^{kappa-1} cos v dv and the sine companion,
// kappa in (0, 2), x >= 0.
struct CosSin {
    double c = 0.0;
    double s = 0.0;
};
CosSin cos_sin_power_integral(double kappa, double x);
}  // namespace detail

}  // namespace fracsde::chaos
