#pragma once

// The error function and the two Gaussian integrals
//
//   I(eps) = int e^{-x^2/2} / (x^2 + eps)   dx
//   J(eps) = int e^{-x^2/2} / (x^2 + eps)^2 dx
//
// in closed form.  Everything is routed through the scaled complement
// erfcx(x) = e^{x^2} erfc(x), which keeps I(eps) free of overflow for
// arbitrarily large eps.

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace hpl {

namespace detail {

// erf on |x| <= 2 via the non-alternating confluent series
// erf(x) = 2x/sqrt(pi) e^{-x^2} sum_k (2x^2)^k / (1*3*...*(2k+1)).
inline double erf_series(double x) {
    const double x2 = x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 64; ++k) {
        term *= 2.0 * x2 / (2.0 * k + 1.0);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return 2.0 / std::sqrt(std::numbers::pi) * x * std::exp(-x2) * sum;
}

// Laplace continued fraction for erfcx on x >= 2 (modified Lentz).
inline double erfcx_cf(double x) {
    const double tiny = 1e-300;
    double f = tiny, c = f, d = 0.0;
    // CF: erfcx(x)*sqrt(pi) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    for (int k = 0; k < 200; ++k) {
        const double a = k == 0 ? 1.0 : 0.5 * k;
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return f / std::sqrt(std::numbers::pi);
}

}  // namespace detail

/// erf(x) = 2/sqrt(pi) int_0^x e^{-u^2} du.
inline double erf(double x) {
    const double ax = std::abs(x);
    if (ax <= 2.0) return detail::erf_series(x);
    const double tail = std::exp(-ax * ax) * detail::erfcx_cf(ax);
    return x > 0.0 ? 1.0 - tail : tail - 1.0;
}

/// erfcx(x) = e^{x^2} erfc(x) for x >= 0, evaluated without overflow.
inline double erfcx(double x) {
    if (x < 0.0) throw std::invalid_argument("erfcx: requires x >= 0");
    if (x < 2.0) return std::exp(x * x) * (1.0 - detail::erf_series(x));
    return detail::erfcx_cf(x);
}

namespace detail {

inline double integral_I_closed(double eps) {
    return std::numbers::pi * erfcx(std::sqrt(0.5 * eps)) / std::sqrt(eps);
}

// Hidden negative-control hook: HPL_PERTURB_I=1 shifts I(eps) by +1e-4 so
// the verification suite can demonstrate it catches a broken closed form.
inline double perturb_I() {
    static const double v = std::getenv("HPL_PERTURB_I") ? 1e-4 : 0.0;
    return v;
}

}  // namespace detail

/// I(eps) = pi sqrt(e^eps/eps) (1 - erf(sqrt(eps/2))) = pi erfcx(sqrt(eps/2)) / sqrt(eps).
inline double integral_I(double eps) {
    if (!(eps > 0.0)) throw std::domain_error("integral_I: eps must be > 0 (divergent at 0)");
    return detail::integral_I_closed(eps) + detail::perturb_I();
}

/// J(eps) = (sqrt(2 pi) + (1 - eps) I(eps)) / (2 eps), with I substituted in
/// closed form; the integration-by-parts identity between the two public
/// functions is therefore a real cross-check, not a tautology.
inline double integral_J(double eps) {
    if (!(eps > 0.0)) throw std::domain_error("integral_J: eps must be > 0");
    const double s2pi = std::sqrt(2.0 * std::numbers::pi);
    return (s2pi + (1.0 - eps) * detail::integral_I_closed(eps)) / (2.0 * eps);
}

}  // namespace hpl
