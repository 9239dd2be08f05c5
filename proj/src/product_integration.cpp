#include "fracsde/product_integration.hpp"

#include <cmath>

#include "fracsde/errors.hpp"
#include "fracsde/quadrature.hpp"

namespace fracsde::pint {

CellMoments moments_from_antiderivatives(const std::function<double(double)>& A,
                                         const std::function<double(double)>& P, double dt,
                                         std::size_t n) {
    CellMoments m;
    m.dt = dt;
    m.m0.assign(n + 1, 0.0);
    m.m1.assign(n + 1, 0.0);
    double a_prev = 0.0, p_prev = 0.0;
    for (std::size_t d = 1; d <= n; ++d) {
        const double u = dt * static_cast<double>(d);
        const double a = A(u);
        const double p = P(u);
        m.m0[d] = a - a_prev;
        m.m1[d] = p - p_prev;
        a_prev = a;
        p_prev = p;
    }
    return m;
}

double weighted_singular_integral(const std::function<double(double)>& S, double h, double dt) {
    require(h > -1.0, "weighted_singular_integral: need h > -1");
    // composite 2 x GL8 on the transformed variable
    const auto& rule = quad::gl8_unit();
    const double inv = 1.0 / (1.0 + h);
    double acc = 0.0;
    for (int half = 0; half < 2; ++half)
        for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
            const double w = 0.5 * (static_cast<double>(half) + rule.nodes[g]);
            acc += 0.5 * rule.weights[g] * S(dt * std::pow(w, inv));
        }
    return std::pow(dt, 1.0 + h) * inv * acc;
}

CellMoments moments_singular_kernel(const std::function<double(double)>& S, double h,
                                    double dt, std::size_t n) {
    CellMoments m;
    m.dt = dt;
    m.m0.assign(n + 1, 0.0);
    m.m1.assign(n + 1, 0.0);
    m.m0[1] = weighted_singular_integral(S, h, dt);
    m.m1[1] = weighted_singular_integral(S, h + 1.0, dt);
    const auto& reg = quad::gl8_unit();
    for (std::size_t d = 2; d <= n; ++d) {
        const double lo = dt * static_cast<double>(d - 1);
        for (std::size_t g = 0; g < reg.nodes.size(); ++g) {
            const double u = lo + reg.nodes[g] * dt;
            const double w = reg.weights[g] * dt;
            const double k = std::pow(u, h) * S(u);
            m.m0[d] += w * k;
            m.m1[d] += w * u * k;
        }
    }
    return m;
}

// On cell j with lag d = i - j, the linear interpolant in u = t_i - s reads
// f_j + df_j (d - u/dt); the cell contribution is
//   f_j m0[d] + df_j (d m0[d] - m1[d]/dt).
double convolve_linear_at(std::span<const double> f, const CellMoments& m, std::size_t i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
        const std::size_t d = i - j;
        const double df = f[j + 1] - f[j];
        acc += f[j] * m.m0[d] + df * (static_cast<double>(d) * m.m0[d] - m.m1[d] / m.dt);
    }
    return acc;
}

std::vector<double> convolve_linear(std::span<const double> f, const CellMoments& m) {
    require(!f.empty() && m.m0.size() >= f.size(), "convolve_linear: size mismatch");
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) out[i] = convolve_linear_at(f, m, i);
    return out;
}

}  // namespace fracsde::pint
