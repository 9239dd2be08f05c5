#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracsde/chaos_expansion.hpp"
#include "fracsde/frac_calculus.hpp"
#include "fracsde/quadrature.hpp"
#include "fracsde/special_functions.hpp"
#include "oracles.hpp"

using namespace fracsde;
using namespace fracsde::chaos;

TEST_CASE("cosine basis values and orthonormality") {
    CHECK(cosine_basis_eval(1, 1.7, 4.0) == doctest::Approx(0.5));
    CHECK(cosine_basis_eval(2, 0.0, 1.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(cosine_basis_eval(0, 0.0, 1.0), domain_violation);

    const double T = 1.0;
    const int n = 1 << 14;
    for (std::size_t j = 1; j <= 16; ++j)
        for (std::size_t k = j; k <= 16; ++k) {
            // composite Simpson for the Gram entry
            double acc = 0.0;
            for (int i = 0; i <= n; ++i) {
                const double t = T * i / double(n);
                const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                acc += w * cosine_basis_eval(j, t, T) * cosine_basis_eval(k, t, T);
            }
            acc *= T / (3.0 * n);
            CHECK(std::abs(acc - (j == k ? 1.0 : 0.0)) < 1e-8);
        }
}

TEST_CASE("hermite polynomials") {
    CHECK(hermite_eval(0, 0.73) == 1.0);
    for (double x : {-1.2, 0.4, 2.0})
        CHECK(hermite_eval(2, x) == doctest::Approx(x * x - 1.0).epsilon(1e-14));
    const double x = 1.3;
    CHECK(hermite_eval(5, x) ==
          doctest::Approx(std::pow(x, 5) - 10.0 * std::pow(x, 3) + 15.0 * x).epsilon(1e-13));

    // derivative relation He_n' = n He_{n-1} by central differences
    const double h = 1e-5;
    for (int n = 1; n <= 8; ++n)
        for (double xx : {-1.5, 0.3, 1.1}) {
            const double num = (hermite_eval(n, xx + h) - hermite_eval(n, xx - h)) / (2.0 * h);
            CHECK(std::abs(num - n * hermite_eval(n - 1, xx)) < 1e-8 * std::max(1.0, std::abs(num)));
        }
}

TEST_CASE("bm chaos coefficients and Parseval") {
    const double T = 1.0;
    for (double t : {0.2, 0.9})
        CHECK(bm_chaos_coeff(1, t, T) == doctest::Approx(t / std::sqrt(T)));
    for (std::size_t k : {2u, 5u, 9u}) CHECK(std::abs(bm_chaos_coeff(k, T, T)) < 1e-13);

    const double t = 0.35;
    double sum = 0.0;
    std::size_t k = 1;
    std::vector<double> partial;
    for (std::size_t K = 64; K <= 4096; K *= 4) {
        for (; k <= K; ++k) {
            const double c = bm_chaos_coeff(k, t, T);
            sum += c * c;
        }
        partial.push_back(sum);
    }
    // partial sums increase toward t with an O(1/K) gap
    for (std::size_t j = 1; j < partial.size(); ++j) {
        CHECK(partial[j] > partial[j - 1]);
        CHECK(partial[j] < t);
        CHECK(t - partial[j] < (t - partial[j - 1]) / 2.0);
    }
    CHECK(t - partial.back() < 1e-3);
}

TEST_CASE("incomplete cosine/sine power integrals match adaptive quadrature") {
    for (double kappa : {0.3, 0.7, 1.0, 1.5})
        for (double x : {0.5, 5.0, 19.0, 25.0, 80.0}) {
            std::vector<double> panels = quad::graded_mesh(0.0, std::min(1.0, x), 6, 3.0);
            for (double b = 1.0; b < x; b += 3.141592653589793) panels.push_back(b);
            panels.push_back(x);
            std::sort(panels.begin(), panels.end());
            panels.erase(std::unique(panels.begin(), panels.end()), panels.end());
            const double c_ref =
                quad::integrate_adaptive_panels(
                    [&](double v) { return std::pow(v, kappa - 1.0) * std::cos(v); }, panels,
                    1e-14, 1e-12, 4000)
                    .value;
            const double s_ref =
                quad::integrate_adaptive_panels(
                    [&](double v) { return std::pow(v, kappa - 1.0) * std::sin(v); }, panels,
                    1e-14, 1e-12, 4000)
                    .value;
            const auto cs = detail::cos_sin_power_integral(kappa, x);
            CHECK(std::abs(cs.c - c_ref) < 1e-7);
            CHECK(std::abs(cs.s - s_ref) < 1e-7);
        }
}

TEST_CASE("genproc coefficients") {
    const double T = 1.0;
    // k = 1 closed form
    CHECK(genproc_coeff(1, 0.7, T, 0.4, 0.9) ==
          doctest::Approx(std::pow(0.7, 0.5) / std::tgamma(1.5)).epsilon(1e-12));
    // beta = gamma collapses to the plain antiderivative of the basis
    for (std::size_t k : {2u, 7u, 40u})
        for (double t : {0.3, 0.8})
            CHECK(genproc_coeff(k, t, T, 0.6, 0.6) ==
                  doctest::Approx(bm_chaos_coeff(k, t, T)).epsilon(1e-11));

    // cross-check against grid product integration of the sampled basis
    for (auto [beta, gamma] : {std::pair{0.5, 0.8}, std::pair{0.9, 0.3}}) {
        const double kappa = 1.0 - (gamma - beta);
        for (std::size_t k : {3u, 17u}) {
            const std::size_t n = 64 * k;
            const auto mk = SampledPath::sample(
                T, n, [&](double s) { return cosine_basis_eval(k, s, T); });
            const auto If = fraccalc::frac_integral(fraccalc::IntegralKind::RL, kappa, mk);
            CHECK(genproc_coeff(k, T, T, beta, gamma) ==
                  doctest::Approx(If[n]).epsilon(2e-3));
        }
    }

    // decay exponent gamma - beta - 1 over k in [16, 512]
    const double beta = 0.3, gamma = 0.8;
    std::vector<double> lx, ly;
    for (std::size_t k = 16; k <= 512; k *= 2) {
        lx.push_back(std::log(double(k)));
        ly.push_back(std::log(std::abs(genproc_coeff(k, T, T, beta, gamma))));
    }
    CHECK(oracles::fit_slope(lx, ly) == doctest::Approx(gamma - beta - 1.0).epsilon(0.1));
}

namespace {

// Convergence probe for partial weighted sums S_K at K = 2^j: returns the
// ratio of successive increments (< 1 eventually iff the series converges).
std::vector<double> increment_ratios(const std::vector<double>& partial) {
    std::vector<double> r;
    for (std::size_t j = 2; j < partial.size(); ++j) {
        const double d1 = partial[j - 1] - partial[j - 2];
        const double d2 = partial[j] - partial[j - 1];
        r.push_back(d2 / d1);
    }
    return r;
}

}  // namespace

TEST_CASE("weighted norms: white-noise threshold p > 1") {
    const double T = 1.0, t0 = 0.41;
    auto partial_sums = [&](double pw) {
        WeightSequence q{0.9, pw};
        std::vector<double> out;
        double sum = 0.0;
        std::size_t k = 1;
        for (std::size_t K = 64; K <= 8192; K *= 2) {
            for (; k <= K; ++k) {
                const double x = cosine_basis_eval(k, t0, T);
                sum += q.q(k) * x * x;
            }
            out.push_back(sum);
        }
        return out;
    };
    for (double ratio : increment_ratios(partial_sums(1.3))) CHECK(ratio < 0.9);
    for (double ratio : increment_ratios(partial_sums(0.7))) CHECK(ratio > 1.02);

    std::vector<double> zeros(100, 0.0);
    CHECK(weighted_norm(zeros, WeightSequence{0.5, 1.0}) == 0.0);
    CHECK_THROWS_AS(weighted_norm(zeros, WeightSequence{1.5, 1.0}), domain_violation);
}

TEST_CASE("weighted norms: generalized-process threshold 2(gamma-beta)-1") {
    const double beta = 0.2, gamma = 0.9, T = 1.0;  // threshold p* = 0.4
    auto partial_sums = [&](double pw) {
        WeightSequence q{0.9, pw};
        std::vector<double> out;
        double sum = 0.0;
        std::size_t k = 1;
        for (std::size_t K = 64; K <= 4096; K *= 2) {
            for (; k <= K; ++k) {
                const double x = genproc_coeff(k, T, T, beta, gamma);
                sum += q.q(k) * x * x;
            }
            out.push_back(sum);
        }
        return out;
    };
    for (double ratio : increment_ratios(partial_sums(0.6))) CHECK(ratio < 0.95);
    for (double ratio : increment_ratios(partial_sums(0.2))) CHECK(ratio > 1.02);
}

TEST_CASE("gbm second moment closed forms") {
    // sigma = 0: deterministic square
    GbmParams det{1.3, -0.4, 0.0, 0.7, 0.5};
    const double e = special::ml_eval(0.7, 1.0, -0.4 * std::pow(0.8, 0.7));
    CHECK(gbm_second_moment(det, 0.8, 1e-10) == doctest::Approx(1.3 * 1.3 * e * e).epsilon(1e-10));

    // classical GBM: X0^2 exp((2a + sigma^2) t)
    GbmParams cl{1.0, 0.3, 0.5, 1.0, 1.0};
    CHECK(gbm_second_moment(cl, 1.0, 1e-6) ==
          doctest::Approx(std::exp(2.0 * 0.3 + 0.25)).epsilon(1e-3));

    // a = 0: one-parameter Mittag-Leffler of order r = 2(beta-gamma)+1
    GbmParams fr{1.0, 0.0, 0.6, 0.9, 0.6};
    const double r = 2.0 * (0.9 - 0.6) + 1.0;
    const double arg = 0.36 * std::tgamma(r) / std::pow(std::tgamma(1.3), 2.0);
    const double exact = special::detail::ml_eval_any(r, 1.0, arg);  // t = 1
    CHECK(gbm_second_moment(fr, 1.0, 1e-8) == doctest::Approx(exact).epsilon(1e-4));

    GbmParams bad{1.0, 0.0, 0.5, 0.2, 0.9};
    CHECK_THROWS_AS(gbm_second_moment(bad, 1.0, 1e-6), domain_violation);
}

TEST_CASE("gbm second moment grows from the deterministic floor") {
    GbmParams p{1.0, 0.2, 0.6, 0.8, 0.6};
    double prev = 0.0;
    for (double t : {0.25, 0.5, 1.0, 1.5}) {
        const double v = gbm_second_moment(p, t, 1e-8);
        const double e = special::ml_eval(0.8, 1.0, 0.2 * std::pow(t, 0.8));
        CHECK(v >= e * e);  // noise layers are non-negative
        CHECK(v > prev);    // and nondecreasing in t for a >= 0
        prev = v;
    }
}

TEST_CASE("gbm propagator structure") {
    const GridSpec grid{1.0, 64};
    GbmParams p{2.0, 0.4, 0.0, 0.8, 0.6};

    const auto t0 = gbm_propagator(p, 4, 0, grid);
    CHECK(t0.entries().size() == 1);
    for (std::size_t i = 0; i <= 64; ++i) {
        const double expect =
            2.0 * special::ml_eval(0.8, 1.0, 0.4 * std::pow(grid.node(i), 0.8));
        CHECK(t0.entries()[0].second[i] == doctest::Approx(expect).epsilon(1e-12));
    }

    const auto t2 = gbm_propagator(p, 3, 2, grid);  // sigma = 0
    CHECK(t2.entries().size() == 1 + 3 + 6);
    for (const auto& [alpha, path] : t2.entries()) {
        if (alpha.order() == 0) continue;
        for (std::size_t i = 0; i <= 64; ++i) CHECK(path[i] == 0.0);
    }

    CHECK_THROWS_AS(gbm_propagator(p, 100, 4, grid, 1000), domain_violation);
}

TEST_CASE("propagator Parseval sums approach the second moment monotonically") {
    const GridSpec grid{1.0, 96};
    GbmParams p{1.0, 0.5, 0.5, 0.9, 0.6};
    const double target = gbm_second_moment(p, 1.0, 1e-8);

    auto parseval_last = [&](std::size_t K, std::size_t N) {
        const auto table = gbm_propagator(p, K, N, grid);
        double s = 0.0;
        for (const auto& [alpha, path] : table.entries()) s += path[96] * path[96];
        return s;
    };
    const double s_8_2 = parseval_last(8, 2);
    const double s_16_2 = parseval_last(16, 2);
    const double s_16_3 = parseval_last(16, 3);
    CHECK(s_8_2 < s_16_2);
    CHECK(s_16_2 < s_16_3);
    CHECK(s_16_3 < target * 1.0005);
    CHECK(s_16_3 > 0.85 * target);
}

TEST_CASE("chaos-table q-norm is Cauchy beyond the classical regime") {
    // beta - gamma <= -1/2: no classical solution, but the weighted table
    // norm still converges for p > 2(gamma-beta) - 1.
    const GridSpec grid{1.0, 48};
    GbmParams p{1.0, -0.3, 0.8, 0.2, 0.9};  // threshold p* = 0.4
    WeightSequence q{0.9, 0.8};
    std::vector<double> norms;
    for (std::size_t K : {8u, 16u, 32u, 64u})
        norms.push_back(weighted_norm(gbm_propagator(p, K, 1, grid), q));
    std::vector<double> sq(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) sq[i] = norms[i] * norms[i];
    CHECK(sq[1] - sq[0] > sq[2] - sq[1]);
    CHECK(sq[2] - sq[1] > sq[3] - sq[2]);
}
