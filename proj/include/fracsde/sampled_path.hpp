#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "fracsde/errors.hpp"

namespace fracsde {

// Uniform time grid on [0, T] with n_steps cells (n_steps + 1 nodes).
struct GridSpec {
    double T = 1.0;
    std::size_t n_steps = 2;

    void validate() const {
        require(T > 0.0, "GridSpec: T must be positive");
        require(n_steps >= 2, "GridSpec: n_steps must be at least 2");
    }
    double dt() const { return T / static_cast<double>(n_steps); }
    double node(std::size_t i) const { return T * static_cast<double>(i) / static_cast<double>(n_steps); }
};

// A real-valued function (or one realization of a process) sampled on the
// uniform grid t_i = i*T/n_steps. initial_value caches f(0+), taken to be
// values[0]; no limit estimation is attempted.
class SampledPath {
public:
    SampledPath() = default;

    SampledPath(double horizon, std::vector<double> values)
        : T_(horizon), values_(std::move(values)) {
        require(T_ > 0.0, "SampledPath: horizon must be positive");
        require(values_.size() >= 2, "SampledPath: need at least two nodes (n_steps >= 1)");
        initial_value_ = values_.front();
    }

    template <typename F>
    static SampledPath sample(double horizon, std::size_t n_steps, F&& f) {
        require(n_steps >= 1, "SampledPath: n_steps must be >= 1");
        std::vector<double> v(n_steps + 1);
        const double dt = horizon / static_cast<double>(n_steps);
        for (std::size_t i = 0; i <= n_steps; ++i) v[i] = f(dt * static_cast<double>(i));
        return SampledPath(horizon, std::move(v));
    }

    double horizon() const { return T_; }
    std::size_t n_steps() const { return values_.size() - 1; }
    std::size_t n_nodes() const { return values_.size(); }
    double dt() const { return T_ / static_cast<double>(n_steps()); }
    double node(std::size_t i) const { return dt() * static_cast<double>(i); }
    double initial_value() const { return initial_value_; }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    bool all_finite() const {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    // Piecewise-linear evaluation between nodes.
    double interp(double t) const {
        if (t <= 0.0) return values_.front();
        if (t >= T_) return values_.back();
        const double x = t / dt();
        const auto j = static_cast<std::size_t>(x);
        const double w = x - static_cast<double>(j);
        return values_[j] * (1.0 - w) + values_[j + 1] * w;
    }

private:
    double T_ = 1.0;
    std::vector<double> values_;
    double initial_value_ = 0.0;
};

// Strictly increasing positive Laplace abscissae.
struct LaplaceGrid {
    std::vector<double> lambdas;

    void validate() const {
        require(!lambdas.empty(), "LaplaceGrid: empty");
        double prev = 0.0;
        for (double l : lambdas) {
            require(l > 0.0 && l > prev, "LaplaceGrid: lambdas must be positive and strictly increasing");
            prev = l;
        }
    }
};

}  // namespace fracsde
