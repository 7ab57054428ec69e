#pragma once

// Scalar minimax optimization of the pointer families.  The objective
// eps -> max{d1(eps), d2(eps)} is continuous but only piecewise smooth, so
// a derivative-free golden-section search runs on a bracket located by a
// log-spaced grid pre-scan.  Everything is deterministic.

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hpl/quality.hpp"

namespace hpl {

struct OptimizationResult {
    double argmin = 0.0;
    double objective = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    std::int64_t iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

namespace detail {

struct GoldenResult {
    double x;
    std::int64_t iterations;
};

template <class F>
GoldenResult golden_section_min(const F& f, double lo, double hi, double tol) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    std::int64_t it = 0;
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++it;
        if (it > 400) break;  // interval no longer shrinks in doubles
    }
    return {0.5 * (a + b), it};
}

// Log-spaced pre-scan; returns the bracket around the best interior node.
template <class F>
std::pair<double, double> log_grid_bracket(const F& f, double lo, double hi, int n,
                                           const char* what) {
    std::vector<double> xs(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) xs[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    int best = 0;
    double fbest = f(xs[0]);
    for (int i = 1; i < n; ++i) {
        const double fi = f(xs[i]);
        if (fi < fbest) {
            fbest = fi;
            best = i;
        }
    }
    if (best == 0 || best == n - 1) {
        std::ostringstream os;
        os << what << ": no interior bracket in (" << lo << ", " << hi << "); grid minimum "
           << fbest << " at " << xs[best] << ", endpoints f(lo)=" << f(lo) << " f(hi)=" << f(hi);
        throw std::runtime_error(os.str());
    }
    return {xs[best - 1], xs[best + 1]};
}

template <class F>
OptimizationResult minimize_scalar(const F& objective, double lo, double hi, double tol,
                                   const char* what) {
    const auto bracket = log_grid_bracket(objective, lo, hi, 200, what);
    const auto g = golden_section_min(objective, bracket.first, bracket.second, tol);
    OptimizationResult r;
    r.argmin = g.x;
    r.iterations = g.iterations;
    r.bracket_lo = bracket.first;
    r.bracket_hi = bracket.second;
    return r;
}

}  // namespace detail

/// Minimize eps -> max{d1, d2} of the unbiased rational-x family.
inline OptimizationResult optimize_pointer_x(double beta, double tol = 1e-8) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::domain_error("optimize_pointer_x: beta must be in (0, 1]");
    if (!(tol > 0.0)) throw std::domain_error("optimize_pointer_x: tol must be > 0");
    auto objective = [beta](double eps) {
        const auto q = rational_x_quality(eps, beta);
        return std::max(q.d1, q.d2);
    };
    auto r = detail::minimize_scalar(objective, 1e-4, 50.0, tol, "optimize_pointer_x");
    const auto q = rational_x_quality(r.argmin, beta);
    r.d1 = q.d1;
    r.d2 = q.d2;
    r.objective = std::max(q.d1, q.d2);
    return r;
}

/// Minimize delta -> max{d1, d2} of the unbiased rational-z family.
inline OptimizationResult optimize_pointer_z(double beta, double tol = 1e-8) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::domain_error("optimize_pointer_z: beta must be in (0, 1]");
    if (!(tol > 0.0)) throw std::domain_error("optimize_pointer_z: tol must be > 0");
    auto objective = [beta](double delta) {
        const auto q = rational_z_quality(delta, beta);
        return std::max(q.d1, q.d2);
    };
    auto r = detail::minimize_scalar(objective, 1e-4, 50.0, tol, "optimize_pointer_z");
    const auto q = rational_z_quality(r.argmin, beta);
    r.d1 = q.d1;
    r.d2 = q.d2;
    r.objective = std::max(q.d1, q.d2);
    return r;
}

enum class NaiveAxis { x, z };

/// Minimize the Section-3 closed-form qualities over the horizon time.
inline OptimizationResult optimize_naive_time(NaiveAxis which, double tol = 1e-8) {
    auto objective = [which](double t) {
        return which == NaiveAxis::x ? naive_quality_x(t) : naive_quality_z(t);
    };
    auto r = detail::minimize_scalar(objective, 1e-2, 50.0, tol, "optimize_naive_time");
    r.objective = objective(r.argmin);
    r.d1 = r.objective;
    r.d2 = r.objective;
    return r;
}

}  // namespace hpl
