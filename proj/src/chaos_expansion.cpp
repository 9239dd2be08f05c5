#include "fracsde/chaos_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "fracsde/product_integration.hpp"
#include "fracsde/special_functions.hpp"

namespace fracsde::chaos {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
}

MultiIndex MultiIndex::lower(std::size_t k) const {
    MultiIndex out;
    bool found = false;
    for (const auto& [mode, m] : entries) {
        if (mode == k) {
            found = true;
            if (m > 1) out.entries.emplace_back(mode, m - 1);
        } else {
            out.entries.emplace_back(mode, m);
        }
    }
    require(found, "MultiIndex::lower: mode not present");
    return out;
}

void MultiIndex::validate() const {
    std::size_t prev = 0;
    for (const auto& [mode, m] : entries) {
        require(mode >= 1 && mode > prev, "MultiIndex: modes must be sorted, unique, >= 1");
        require(m >= 1, "MultiIndex: multiplicities must be >= 1");
        prev = mode;
    }
}

double WeightSequence::q(std::size_t k) const {
    return c * std::pow(static_cast<double>(k), -p);
}

double WeightSequence::weight(const MultiIndex& alpha) const {
    double w = 1.0;
    for (const auto& [mode, m] : alpha.entries)
        w *= std::pow(q(mode), static_cast<double>(m));
    return w;
}

void ChaosTable::insert(MultiIndex alpha, SampledPath values) {
    alpha.validate();
    require(index_.find(alpha) == index_.end(), "ChaosTable: duplicate multi-index");
    index_.emplace(alpha, entries_.size());
    entries_.emplace_back(std::move(alpha), std::move(values));
}

const SampledPath* ChaosTable::find(const MultiIndex& alpha) const {
    const auto it = index_.find(alpha);
    return it == index_.end() ? nullptr : &entries_[it->second].second;
}

double cosine_basis_eval(std::size_t k, double t, double T) {
    require(k >= 1, "cosine_basis_eval: k must be >= 1");
    require(T > 0.0 && t >= 0.0 && t <= T, "cosine_basis_eval: need 0 <= t <= T");
    if (k == 1) return 1.0 / std::sqrt(T);
    return std::sqrt(2.0 / T) * std::cos(kPi * t * static_cast<double>(k - 1) / T);
}

double hermite_eval(int n, double x) {
    require(n >= 0, "hermite_eval: n must be >= 0");
    double hm1 = 0.0, h = 1.0;  // He_{-1}, He_0
    for (int m = 0; m < n; ++m) {
        const double next = x * h - static_cast<double>(m) * hm1;
        hm1 = h;
        h = next;
    }
    return h;
}

double bm_chaos_coeff(std::size_t k, double t, double T) {
    require(k >= 1, "bm_chaos_coeff: k must be >= 1");
    require(T > 0.0 && t >= 0.0 && t <= T, "bm_chaos_coeff: need 0 <= t <= T");
    if (k == 1) return t / std::sqrt(T);
    const double w = kPi * static_cast<double>(k - 1) / T;
    return std::sqrt(2.0 * T) / (kPi * static_cast<double>(k - 1)) * std::sin(w * t);
}

namespace detail {

namespace {

// Power series of the incomplete integrals; alternating, usable while the
// x^{2j}/(2j)! envelope keeps cancellation below ~1e-9 (x <= 20).
CosSin cos_sin_series(double kappa, double x) {
    CosSin out;
    const double xk = std::pow(x, kappa);
    double even = 1.0;  // x^{2j} / (2j)!
    double sign = 1.0;
    for (int j = 0; j < 200; ++j) {
        const double tw = 2.0 * static_cast<double>(j);
        const double tc = sign * even / (tw + kappa);
        const double ts = sign * even * x / ((tw + 1.0) * (tw + 1.0 + kappa));
        out.c += tc;
        out.s += ts;
        if (std::abs(tc) + std::abs(ts) < 1e-18 * (std::abs(out.c) + std::abs(out.s) + 1.0) &&
            tw > x)
            break;
        even *= x * x / ((tw + 1.0) * (tw + 2.0));
        sign = -sign;
    }
    out.c *= xk;
    out.s *= xk;
    return out;
}

// Tail integral int_x^inf v^{kappa-1} e^{iv} dv by repeated integration by
// parts, optimally truncated; subtracted from the full-line values
// Gamma(kappa) {cos, sin}(pi kappa / 2).
CosSin cos_sin_asymptotic(double kappa, double x) {
    const std::complex<double> i(0.0, 1.0);
    std::complex<double> sum = 0.0;
    std::complex<double> coef = i;  // i^{m+1} prod_{l<m} (kappa-1-l)
    double pow_x = std::pow(x, kappa - 1.0);
    double prev_mag = std::abs(coef) * pow_x;
    for (int m = 0; m < 24; ++m) {
        const double mag = std::abs(coef) * pow_x;
        if (m > 0 && mag > prev_mag) break;
        sum += coef * pow_x;
        prev_mag = mag;
        coef *= i * (kappa - 1.0 - static_cast<double>(m));
        pow_x /= x;
    }
    const std::complex<double> tail = std::exp(i * x) * sum;
    const double g = special::gamma_eval(kappa);
    return {g * std::cos(0.5 * kPi * kappa) - tail.real(),
            g * std::sin(0.5 * kPi * kappa) - tail.imag()};
}

}  // namespace

CosSin cos_sin_power_integral(double kappa, double x) {
    require(kappa > 0.0 && kappa < 2.0, "cos_sin_power_integral: kappa must lie in (0, 2)");
    require(x >= 0.0, "cos_sin_power_integral: x must be >= 0");
    if (x == 0.0) return {};
    if (kappa == 1.0) return {std::sin(x), 1.0 - std::cos(x)};
    if (kappa > 1.0) {
        // one integration by parts down into (0, 1)
        const CosSin base = cos_sin_power_integral(kappa - 1.0, x);
        const double xp = std::pow(x, kappa - 1.0);
        return {xp * std::sin(x) - (kappa - 1.0) * base.s,
                -xp * std::cos(x) + (kappa - 1.0) * base.c};
    }
    return x < 20.0 ? cos_sin_series(kappa, x) : cos_sin_asymptotic(kappa, x);
}

}  // namespace detail

double genproc_coeff(std::size_t k, double t, double T, double beta, double gamma) {
    require(k >= 1, "genproc_coeff: k must be >= 1");
    require(T > 0.0 && t >= 0.0 && t <= T, "genproc_coeff: need 0 <= t <= T");
    require(beta > 0.0 && beta <= 1.0 && gamma > 0.0 && gamma <= 1.0,
            "genproc_coeff: beta, gamma must lie in (0, 1]");
    const double kappa = 1.0 - (gamma - beta);
    if (t == 0.0) return 0.0;
    if (k == 1)
        return std::pow(t, kappa) / (std::sqrt(T) * special::gamma_eval(kappa + 1.0));
    const double w = kPi * static_cast<double>(k - 1) / T;
    const auto cs = detail::cos_sin_power_integral(kappa, w * t);
    const double conv = (std::cos(w * t) * cs.c + std::sin(w * t) * cs.s) / std::pow(w, kappa);
    return std::sqrt(2.0 / T) * special::gamma_reciprocal(kappa) * conv;
}

double weighted_norm(std::span<const double> coeffs, const WeightSequence& q) {
    q.validate();
    double sum = 0.0;
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
        const double x = coeffs[idx];
        sum += q.q(idx + 1) * x * x;
    }
    return std::sqrt(sum);
}

namespace {

double l2_norm_sq(const SampledPath& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 <= f.n_steps(); ++i)
        acc += 0.5 * (f[i] * f[i] + f[i + 1] * f[i + 1]);
    return acc * f.dt();
}

}  // namespace

double weighted_norm(const ChaosTable& table, const WeightSequence& q) {
    q.validate();
    double sum = 0.0;
    for (const auto& [alpha, values] : table.entries())
        sum += q.weight(alpha) * l2_norm_sq(values);
    return std::sqrt(sum);
}

namespace {

// sup over [0, T] of E^2_{beta,rho}(a u^beta), probed on a coarse grid; used
// in the layer majorant Phi^2(u) <= D u^{r-1}.
double kernel_envelope(double beta, double rho, double a, double T) {
    double d = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double u = T * static_cast<double>(i) / 32.0;
        const double e = special::detail::ml_eval_any(beta, rho, a * std::pow(u, beta));
        d = std::max(d, e * e);
    }
    return d;
}

}  // namespace

double gbm_second_moment(const GbmParams& p, double t, double tol, std::size_t n_grid) {
    p.validate();
    require(p.classical(), "gbm_second_moment: beta - gamma <= -1/2, E X^2 is infinite "
                           "(no classical solution)");
    require(tol > 0.0, "gbm_second_moment: tol must be positive");
    require(t > 0.0 && n_grid >= 8, "gbm_second_moment: bad grid");

    const double rho = p.beta - p.gamma + 1.0;
    const double r = 2.0 * (p.beta - p.gamma) + 1.0;
    const double dt = t / static_cast<double>(n_grid);
    // Phi^2(u) = u^{r-1} E^2_{beta,rho}(a u^beta): split off the power weight
    auto smooth_sq = [&](double u) {
        const double e = special::detail::ml_eval_any(p.beta, rho, p.a * std::pow(u, p.beta));
        return e * e;
    };
    const auto moments = pint::moments_singular_kernel(smooth_sq, r - 1.0, dt, n_grid);

    std::vector<double> layer(n_grid + 1);
    for (std::size_t i = 0; i <= n_grid; ++i) {
        const double e = special::detail::ml_eval_any(
            p.beta, 1.0, p.a * std::pow(dt * static_cast<double>(i), p.beta));
        layer[i] = e * e;
    }
    const double m0_sup = *std::max_element(layer.begin(), layer.end());
    const double envelope = kernel_envelope(p.beta, rho, p.a, t);
    const double gr = special::gamma_eval(r);

    double sum = layer.back();
    const double s2 = p.sigma * p.sigma;
    double sig_pow = 1.0;
    for (int n = 1; n <= 64; ++n) {
        layer = pint::convolve_linear(layer, moments);
        sig_pow *= s2;
        sum += sig_pow * layer.back();
        // remaining-terms majorant via M_m <= m0_sup (D Gamma(r))^m t^{mr} / Gamma(mr+1)
        const double m = static_cast<double>(n + 1);
        const double log_next = m * std::log(std::max(s2 * envelope * gr, 1e-300)) +
                                m * r * std::log(t) - special::log_gamma_pos(m * r + 1.0);
        const double bound = m0_sup * std::exp(log_next);
        if (bound < 0.5 * tol * std::abs(sum) &&
            sig_pow * std::abs(layer.back()) < 0.5 * tol * std::abs(sum))
            return p.X0 * p.X0 * sum;
    }
    throw numerical_failure("gbm_second_moment: layer series did not converge within 64 layers");
}

namespace {

// All multi-indices of order n on modes 1..K, graded-lexicographically within
// the order (modes ascending, largest first mode first).
void enumerate_order(std::size_t K, std::size_t n, std::size_t min_mode, MultiIndex& prefix,
                     std::vector<MultiIndex>& out) {
    if (n == 0) {
        out.push_back(prefix);
        return;
    }
    for (std::size_t k = min_mode; k <= K; ++k) {
        for (std::size_t m = n; m >= 1; --m) {
            prefix.entries.emplace_back(k, m);
            enumerate_order(K, n - m, k + 1, prefix, out);
            prefix.entries.pop_back();
        }
    }
}

}  // namespace

ChaosTable gbm_propagator(const GbmParams& p, std::size_t K, std::size_t N,
                          const GridSpec& grid, std::size_t max_entries) {
    p.validate();
    grid.validate();
    require(K >= 1, "gbm_propagator: need K >= 1");

    // table size sum_{n<=N} C(K+n-1, n)
    double size = 0.0, c = 1.0;
    for (std::size_t n = 0; n <= N; ++n) {
        size += c;
        c = c * static_cast<double>(K + n) / static_cast<double>(n + 1);
    }
    require(size <= static_cast<double>(max_entries),
            "gbm_propagator: table size " + std::to_string(static_cast<std::size_t>(size)) +
                " exceeds the resource cap " + std::to_string(max_entries));

    const std::size_t n_grid = grid.n_steps;
    const double dt = grid.dt();
    const double rho = p.beta - p.gamma + 1.0;

    // Exact cell moments of Phi: int_0^x y_{b,rho} = y_{b,rho+1} and
    // int_0^x u y_{b,rho} = x y_{b,rho+1} - y_{b,rho+2}.
    auto Y1 = [&](double u) { return special::detail::ml_y_any(p.beta, rho + 1.0, p.a, u); };
    auto Y2 = [&](double u) { return special::detail::ml_y_any(p.beta, rho + 2.0, p.a, u); };
    const auto moments = pint::moments_from_antiderivatives(
        Y1, [&](double u) { return u * Y1(u) - Y2(u); }, dt, n_grid);

    // basis samples m_k(t_i)
    std::vector<std::vector<double>> basis(K + 1);
    for (std::size_t k = 1; k <= K; ++k) {
        basis[k].resize(n_grid + 1);
        for (std::size_t i = 0; i <= n_grid; ++i)
            basis[k][i] = cosine_basis_eval(k, grid.node(i), grid.T);
    }

    ChaosTable table(grid.T, K, N);
    std::vector<double> root(n_grid + 1);
    for (std::size_t i = 0; i <= n_grid; ++i)
        root[i] = p.X0 * special::detail::ml_eval_any(
                             p.beta, 1.0, p.a * std::pow(grid.node(i), p.beta));
    table.insert(MultiIndex::empty(), SampledPath(grid.T, root));

    std::vector<double> integrand(n_grid + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        std::vector<MultiIndex> order_n;
        MultiIndex prefix;
        enumerate_order(K, n, 1, prefix, order_n);
        for (auto& alpha : order_n) {
            std::fill(integrand.begin(), integrand.end(), 0.0);
            for (const auto& [k, mult] : alpha.entries) {
                const SampledPath* parent = table.find(alpha.lower(k));
                const double w = std::sqrt(static_cast<double>(mult));
                for (std::size_t i = 0; i <= n_grid; ++i)
                    integrand[i] += w * (*parent)[i] * basis[k][i];
            }
            std::vector<double> x = pint::convolve_linear(integrand, moments);
            for (double& v : x) v *= p.sigma;
            table.insert(std::move(alpha), SampledPath(grid.T, std::move(x)));
        }
    }
    return table;
}

}  // namespace fracsde::chaos
