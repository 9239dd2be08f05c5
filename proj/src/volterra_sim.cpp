#include "fracsde/volterra_sim.hpp"

#include <cmath>
#include <string>

#include "fracsde/parallel.hpp"
#include "fracsde/product_integration.hpp"
#include "fracsde/quadrature.hpp"
#include "fracsde/rng.hpp"
#include "fracsde/special_functions.hpp"

namespace fracsde::sim {

void KernelSpec::validate() const {
    if (const auto* p = std::get_if<Power>(&variant)) {
        require(std::isfinite(p->scale), "KernelSpec: power scale must be finite");
        require(p->exponent > -0.5,
                "KernelSpec: power exponent must exceed -1/2 (square integrability)");
    } else {
        const auto& f = std::get<Fou>(variant);
        require(f.beta > 0.0 && f.beta <= 1.0 && f.gamma > 0.0 && f.gamma <= 1.0,
                "KernelSpec: beta, gamma must lie in (0, 1]");
        require(f.beta - f.gamma > -0.5, "KernelSpec: requires beta - gamma > -1/2");
    }
}

double KernelSpec::eval(double u) const {
    if (const auto* p = std::get_if<Power>(&variant)) return p->scale * std::pow(u, p->exponent);
    const auto& f = std::get<Fou>(variant);
    return special::detail::ml_y_any(f.beta, f.beta - f.gamma + 1.0, f.a, u);
}

double KernelSpec::antiderivative(double u) const {
    if (u == 0.0) return 0.0;
    if (const auto* p = std::get_if<Power>(&variant))
        return p->scale * std::pow(u, p->exponent + 1.0) / (p->exponent + 1.0);
    const auto& f = std::get<Fou>(variant);
    return special::detail::ml_y_any(f.beta, f.beta - f.gamma + 2.0, f.a, u);
}

double KernelSpec::diagonal_exponent() const {
    if (const auto* p = std::get_if<Power>(&variant)) return p->exponent;
    const auto& f = std::get<Fou>(variant);
    return f.beta - f.gamma;
}

double KernelSpec::smooth_factor(double u) const {
    if (const auto* p = std::get_if<Power>(&variant)) return p->scale;
    const auto& f = std::get<Fou>(variant);
    return special::detail::ml_eval_any(f.beta, f.beta - f.gamma + 1.0,
                                        f.a * std::pow(u, f.beta));
}

PathEnsemble simulate_bm(const GridSpec& grid, std::size_t n_paths, std::uint64_t seed,
                         std::size_t jobs) {
    PathEnsemble ens(grid, n_paths, seed);
    const double sdt = std::sqrt(grid.dt());
    parallel_for(n_paths, jobs, [&](std::size_t p) {
        auto w = ens.row(p);
        for (std::size_t i = 1; i < w.size(); ++i)
            w[i] = w[i - 1] + sdt * rng::gaussian(seed, p, i - 1);
    });
    return ens;
}

namespace {

// Exact cell averages kappa[d] = (1/dt) int_{(d-1)dt}^{d dt} K(u) du.
std::vector<double> cell_averages(const KernelSpec& kernel, const GridSpec& grid) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();
    std::vector<double> kappa(n + 1, 0.0);
    double prev = 0.0;
    for (std::size_t d = 1; d <= n; ++d) {
        const double cur = kernel.antiderivative(dt * static_cast<double>(d));
        kappa[d] = (cur - prev) / dt;
        prev = cur;
    }
    return kappa;
}

PathEnsemble volterra_increment(const KernelSpec& kernel, const GridSpec& grid,
                                std::size_t n_paths, std::uint64_t seed, std::size_t jobs,
                                const std::optional<SampledPath>& g) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();
    const double sdt = std::sqrt(dt);
    const auto kappa = cell_averages(kernel, grid);
    std::vector<double> gmid(n, 1.0);
    if (g)
        for (std::size_t j = 0; j < n; ++j)
            gmid[j] = g->interp((static_cast<double>(j) + 0.5) * dt);

    PathEnsemble ens(grid, n_paths, seed);
    parallel_for(n_paths, jobs, [&](std::size_t p) {
        std::vector<double> dw(n);
        for (std::size_t j = 0; j < n; ++j)
            dw[j] = sdt * gmid[j] * rng::gaussian(seed, p, j);
        auto v = ens.row(p);
        for (std::size_t i = 1; i <= n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < i; ++j) acc += kappa[i - j] * dw[j];
            v[i] = acc;
        }
    });
    return ens;
}

}  // namespace

namespace detail {

// Covariance assembly: with s = t_l + (1 - eta) dt on cell l, the entry
// C(i,j) = int_0^{t_j} K(t_i-s) K(t_j-s) ds satisfies the diagonal recurrence
//   C(i,j) = C(i-1,j-1) + dt * sum_g w_g K((i-1+eta_g)dt) K((j-1+eta_g)dt)
// with the j = 1 column carrying the kernel singularity, integrated with the
// power weight absorbed exactly.
std::vector<double> assemble_covariance(const KernelSpec& kernel, const GridSpec& grid) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();
    const auto& reg = quad::gl8_unit();
    const double h = kernel.diagonal_exponent();

    std::vector<std::vector<double>> T(n, std::vector<double>(reg.nodes.size()));
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t gidx = 0; gidx < reg.nodes.size(); ++gidx)
            T[m][gidx] = kernel.eval((static_cast<double>(m) + reg.nodes[gidx]) * dt);

    std::vector<double> c(n * n, 0.0);
    c[0] = pint::weighted_singular_integral(
        [&](double u) {
            const double s = kernel.smooth_factor(u);
            return s * s;
        },
        2.0 * h, dt);
    for (std::size_t i = 2; i <= n; ++i) {
        const double off = dt * static_cast<double>(i - 1);
        const double val = pint::weighted_singular_integral(
            [&](double u) { return kernel.eval(off + u) * kernel.smooth_factor(u); }, h, dt);
        c[(i - 1) * n] = val;
        c[i - 1] = val;
    }
    for (std::size_t j = 2; j <= n; ++j) {
        for (std::size_t i = j; i <= n; ++i) {
            double acc = 0.0;
            for (std::size_t gidx = 0; gidx < reg.nodes.size(); ++gidx)
                acc += reg.weights[gidx] * T[i - 1][gidx] * T[j - 1][gidx];
            const double val = c[(i - 2) * n + (j - 2)] + acc * dt;
            c[(i - 1) * n + (j - 1)] = val;
            c[(j - 1) * n + (i - 1)] = val;
        }
    }
    return c;
}

}  // namespace detail

namespace {

PathEnsemble volterra_covariance(const KernelSpec& kernel, const GridSpec& grid,
                                 std::size_t n_paths, std::uint64_t seed, std::size_t jobs) {
    const std::size_t n = grid.n_steps;
    std::vector<double> L = detail::assemble_covariance(kernel, grid);
    detail::cholesky_factor(L, n);

    PathEnsemble ens(grid, n_paths, seed);
    parallel_for(n_paths, jobs, [&](std::size_t p) {
        std::vector<double> xi(n);
        for (std::size_t k = 0; k < n; ++k) xi[k] = rng::gaussian(seed, p, k);
        auto v = ens.row(p);
        for (std::size_t i = 1; i <= n; ++i) {
            double acc = 0.0;
            const double* lrow = &L[(i - 1) * n];
            for (std::size_t k = 0; k < i; ++k) acc += lrow[k] * xi[k];
            v[i] = acc;
        }
    });
    return ens;
}

}  // namespace

namespace detail {

void cholesky_factor(std::vector<double>& a, std::size_t n) {
    require(a.size() == n * n, "cholesky_factor: size mismatch");
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a[i * n + i]);
    const std::vector<double> original = a;
    for (int attempt = 0; attempt < 2; ++attempt) {
        bool ok = true;
        double bad_pivot = 0.0;
        for (std::size_t j = 0; j < n && ok; ++j) {
            double d = a[j * n + j];
            for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
            if (d <= 0.0 || !std::isfinite(d)) {
                ok = false;
                bad_pivot = d;
                break;
            }
            const double ljj = std::sqrt(d);
            a[j * n + j] = ljj;
            for (std::size_t i = j + 1; i < n; ++i) {
                double s = a[i * n + j];
                for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
                a[i * n + j] = s / ljj;
            }
        }
        if (ok) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) a[i * n + j] = 0.0;
            return;
        }
        if (attempt == 0) {
            a = original;
            const double jitter = 1e-12 * max_diag;
            for (std::size_t i = 0; i < n; ++i) a[i * n + i] += jitter;
        } else {
            throw numerical_failure(
                "cholesky_factor: covariance numerically indefinite even after jitter; "
                "minimum-eigenvalue bound (failing pivot) = " +
                std::to_string(bad_pivot));
        }
    }
}

}  // namespace detail

PathEnsemble simulate_volterra(const KernelSpec& kernel, const GridSpec& grid,
                               std::size_t n_paths, std::uint64_t seed, SimMethod method,
                               std::size_t jobs, const std::optional<SampledPath>& g) {
    kernel.validate();
    grid.validate();
    if (method == SimMethod::IncrementQuadrature)
        return volterra_increment(kernel, grid, n_paths, seed, jobs, g);
    require(!g.has_value(),
            "simulate_volterra: deterministic integrand g only supported with "
            "IncrementQuadrature");
    return volterra_covariance(kernel, grid, n_paths, seed, jobs);
}

PathEnsemble simulate_fou(const fou::FouParams& params, const GridSpec& grid,
                          std::size_t n_paths, std::uint64_t seed, std::size_t jobs) {
    params.validate();
    require(params.classical(),
            "simulate_fou: beta - gamma <= -1/2, no classical (pathwise) solution");
    const auto kernel = KernelSpec::fou(-params.a, params.beta, params.gamma);
    PathEnsemble ens =
        simulate_volterra(kernel, grid, n_paths, seed, SimMethod::IncrementQuadrature, jobs);
    std::vector<double> mean(grid.n_steps + 1);
    for (std::size_t i = 0; i <= grid.n_steps; ++i)
        mean[i] = params.X0 * special::detail::ml_eval_any(
                                  params.beta, 1.0, -params.a * std::pow(grid.node(i), params.beta));
    parallel_for(n_paths, jobs, [&](std::size_t p) {
        auto row = ens.row(p);
        for (std::size_t i = 0; i < row.size(); ++i) row[i] += mean[i];
    });
    return ens;
}

MomentCurves empirical_moments(const PathEnsemble& ens) {
    require(ens.n_paths() >= 2, "empirical_moments: need at least two paths");
    const std::size_t n_nodes = ens.n_nodes();
    const double P = static_cast<double>(ens.n_paths());
    std::vector<double> mean(n_nodes, 0.0), var(n_nodes, 0.0);
    std::vector<double> mean_se(n_nodes), var_se(n_nodes);
    for (std::size_t p = 0; p < ens.n_paths(); ++p) {
        auto row = ens.row(p);
        for (std::size_t i = 0; i < n_nodes; ++i) mean[i] += row[i];
    }
    for (double& m : mean) m /= P;
    for (std::size_t p = 0; p < ens.n_paths(); ++p) {
        auto row = ens.row(p);
        for (std::size_t i = 0; i < n_nodes; ++i) {
            const double d = row[i] - mean[i];
            var[i] += d * d;
        }
    }
    for (std::size_t i = 0; i < n_nodes; ++i) {
        var[i] /= (P - 1.0);
        mean_se[i] = std::sqrt(var[i] / P);
        var_se[i] = var[i] * std::sqrt(2.0 / (P - 1.0));
    }
    const double T = ens.grid().T;
    return {SampledPath(T, std::move(mean)), SampledPath(T, std::move(var)),
            std::move(mean_se), std::move(var_se)};
}

}  // namespace fracsde::sim
