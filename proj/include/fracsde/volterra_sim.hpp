#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "fracsde/fou_analysis.hpp"
#include "fracsde/sampled_path.hpp"

namespace fracsde::sim {

// Lower-triangular convolution kernel K(t, s) = K(t - s) of a Gaussian
// Volterra process int_0^t K(t-s) dw(s).
struct KernelSpec {
    // K(u) = scale * u^exponent; square-integrability requires exponent > -1/2.
    struct Power {
        double scale = 1.0;
        double exponent = 0.0;
    };
    // K(u) = u^{beta-gamma} E_{beta,beta-gamma+1}(a u^beta); the coefficient a
    // is the one inside the Mittag-Leffler factor (an OU process with
    // reversion a uses -a here).
    struct Fou {
        double a = 0.0;
        double beta = 1.0;
        double gamma = 1.0;
    };

    std::variant<Power, Fou> variant;

    static KernelSpec power(double scale, double exponent) { return {Power{scale, exponent}}; }
    static KernelSpec fou(double a, double beta, double gamma) { return {Fou{a, beta, gamma}}; }

    void validate() const;
    double eval(double u) const;
    double antiderivative(double u) const;   // int_0^u K(v) dv, closed form
    double diagonal_exponent() const;        // h with K(u) = u^h smooth_factor(u)
    double smooth_factor(double u) const;    // K(u) / u^h, regular at u = 0
};

enum class SimMethod { IncrementQuadrature, CovarianceFactor };

// Immutable matrix of realizations: n_paths rows over grid nodes 0..n_steps.
class PathEnsemble {
public:
    PathEnsemble(GridSpec grid, std::size_t n_paths, std::uint64_t seed)
        : grid_(grid), n_paths_(n_paths), seed_(seed),
          data_(n_paths * (grid.n_steps + 1), 0.0) {
        grid_.validate();
        require(n_paths >= 1, "PathEnsemble: need at least one path");
    }

    const GridSpec& grid() const { return grid_; }
    std::size_t n_paths() const { return n_paths_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t n_nodes() const { return grid_.n_steps + 1; }

    double at(std::size_t path, std::size_t node) const {
        return data_[path * n_nodes() + node];
    }
    std::span<double> row(std::size_t path) { return {&data_[path * n_nodes()], n_nodes()}; }
    std::span<const double> row(std::size_t path) const {
        return {&data_[path * n_nodes()], n_nodes()};
    }
    const std::vector<double>& data() const { return data_; }

private:
    GridSpec grid_;
    std::size_t n_paths_;
    std::uint64_t seed_;
    std::vector<double> data_;
};

// Standard Brownian motion: i.i.d. N(0, dt) increments, reproducible by seed.
PathEnsemble simulate_bm(const GridSpec& grid, std::size_t n_paths, std::uint64_t seed,
                         std::size_t jobs = 1);

// Gaussian Volterra process driven by the kernel.
//  - IncrementQuadrature: V(t_i) = sum_{j<i} kappa_{i-j} dW_j with kappa the
//    exact cell average of K (closed form for both kernel families).
//  - CovarianceFactor: exact-in-law sampling through a Cholesky factor of the
//    covariance C(t_i,t_j) = int_0^{min} K(t_i-s) K(t_j-s) ds, assembled by
//    per-cell Gauss rules; the diagonal-cell singularity is absorbed exactly
//    by a power-weight substitution.
// `g` (optional, experimental): deterministic integrand multiplying dw,
// sampled at cell midpoints.
PathEnsemble simulate_volterra(const KernelSpec& kernel, const GridSpec& grid,
                               std::size_t n_paths, std::uint64_t seed, SimMethod method,
                               std::size_t jobs = 1,
                               const std::optional<SampledPath>& g = std::nullopt);

// Time-fractional Ornstein-Uhlenbeck ensemble: deterministic mean
// X0 E_beta(-a t^beta) plus the Volterra part with the matching kernel.
PathEnsemble simulate_fou(const fou::FouParams& params, const GridSpec& grid,
                          std::size_t n_paths, std::uint64_t seed, std::size_t jobs = 1);

struct MomentCurves {
    SampledPath mean;
    SampledPath variance;
    std::vector<double> mean_se;
    std::vector<double> variance_se;
};

// Per-node sample mean and unbiased variance with standard errors.
MomentCurves empirical_moments(const PathEnsemble& ens);

namespace detail {
// In-place lower Cholesky of a dense SPD matrix (row-major n x n). Adds one
// diagonal jitter retry of 1e-12 * max diagonal; a second failure throws with
// the offending pivot as a minimum-eigenvalue bound.
void cholesky_factor(std::vector<double>& a, std::size_t n);

// Dense covariance C(t_i, t_j) = int_0^{min} K(t_i-s) K(t_j-s) ds over nodes
// 1..n (row-major n x n).
std::vector<double> assemble_covariance(const KernelSpec& kernel, const GridSpec& grid);
}  // namespace detail

}  // namespace fracsde::sim
