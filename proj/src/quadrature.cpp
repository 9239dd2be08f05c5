#include "fracsde/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "fracsde/errors.hpp"

namespace fracsde::quad {

namespace {

// Abscissae/weights of the 7-15 Gauss-Kronrod pair on [-1, 1] (QUADPACK values).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
    double a, b, value, err;
    bool operator<(const Interval& o) const { return err < o.err; }
};

// QUADPACK-style interval evaluation with the resasc-scaled error estimate.
Interval eval_gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        fv[j] = f(c - x);
        fv[14 - j] = f(c + x);
    }
    double result_k = kWgk[7] * fv[7];
    double result_g = kWg[3] * fv[7];
    double resabs = kWgk[7] * std::abs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        const double fs = fv[j] + fv[14 - j];
        result_k += kWgk[j] * fs;
        resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
        if (j % 2 == 1) result_g += kWg[j / 2] * fs;
    }
    const double mean = 0.5 * result_k;
    double resasc = kWgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    result_k *= h;
    result_g *= h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs(result_k - result_g);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round_off = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    if (round_off > std::numeric_limits<double>::min()) err = std::max(err, round_off);
    return {a, b, result_k, err};
}

}  // namespace

Result gk15(const Integrand& f, double a, double b) {
    const Interval iv = eval_gk15(f, a, b);
    return {iv.value, iv.err, true, 15};
}

Result integrate_adaptive_panels(const Integrand& f, const std::vector<double>& panels,
                                 double abs_tol, double rel_tol, std::size_t max_intervals) {
    require(panels.size() >= 2, "integrate_adaptive_panels: need at least one panel");
    std::priority_queue<Interval> heap;
    double total = 0.0, total_err = 0.0;
    std::size_t evals = 0;
    for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
        Interval iv = eval_gk15(f, panels[i], panels[i + 1]);
        evals += 15;
        total += iv.value;
        total_err += iv.err;
        heap.push(iv);
    }
    auto tolerance = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
    while (total_err > tolerance() && heap.size() < max_intervals) {
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at rounding limit
            total_err -= worst.err;
            continue;
        }
        Interval left = eval_gk15(f, worst.a, mid);
        Interval right = eval_gk15(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    return {total, total_err, total_err <= tolerance(), evals};
}

Result integrate_adaptive(const Integrand& f, double a, double b,
                          double abs_tol, double rel_tol, std::size_t max_intervals) {
    return integrate_adaptive_panels(f, {a, b}, abs_tol, rel_tol, max_intervals);
}

std::vector<double> graded_mesh(double a, double b, std::size_t count, double exponent) {
    require(count >= 1 && exponent >= 1.0 && b > a, "graded_mesh: bad arguments");
    std::vector<double> x(count + 1);
    for (std::size_t i = 0; i <= count; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(count);
        x[i] = a + (b - a) * std::pow(s, exponent);
    }
    x.front() = a;
    x.back() = b;
    return x;
}

namespace {
constexpr double kXg8[4] = {
    0.183434642495649804939476142360184,
    0.525532409916328985817739049189246,
    0.796666477413626739591553936475830,
    0.960289856497536231683560868569473};
constexpr double kWg8[4] = {
    0.362683783378361982965150449277196,
    0.313706645877887287337962201986601,
    0.222381034453374470544355994426241,
    0.101228536290376259152531354309962};
}  // namespace

double gl8(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double sum = 0.0;
    for (int j = 0; j < 4; ++j)
        sum += kWg8[j] * (f(c - h * kXg8[j]) + f(c + h * kXg8[j]));
    return sum * h;
}

const UnitRule& gl8_unit() {
    static const UnitRule rule = [] {
        UnitRule r;
        for (int j = 3; j >= 0; --j) {
            r.nodes.push_back(0.5 * (1.0 - kXg8[j]));
            r.weights.push_back(0.5 * kWg8[j]);
        }
        for (int j = 0; j < 4; ++j) {
            r.nodes.push_back(0.5 * (1.0 + kXg8[j]));
            r.weights.push_back(0.5 * kWg8[j]);
        }
        return r;
    }();
    return rule;
}

}  // namespace fracsde::quad
