#pragma once

// Worst-case added variance sigma^2 = || M(h^2) - M(h)^2 || of a pointer.
// Moment matrices of the normalized families are computed by quadrature
// against p(y); the naive Section-3 pointers carry exact closed forms in
// the raw path variable.  Closed-form d1/d2 for both rational families are
// exposed separately; they drive the optimizer and cross-check quadrature.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hpl/endpoint_density.hpp"
#include "hpl/pointers.hpp"
#include "hpl/quadrature.hpp"
#include "hpl/qubit.hpp"

namespace hpl {

struct QualityReport {
    double d1 = 0.0;        // (0,0) entry of M(h^2) - target^2, the n-weighted one
    double d2 = 0.0;        // (1,1) entry
    double sigma_sq = 0.0;  // max(d1, d2)
    double sigma = 0.0;
    PointerFunction pointer;
    TimeHorizon horizon;
};

namespace detail {

inline bool is_naive(const PointerFunction& h) {
    return std::holds_alternative<NaiveLinear>(h) || std::holds_alternative<NaiveQuadratic>(h);
}

// Closed forms, from the f(t) = 1 moment chain:
//   F_{x}(I)  = (2 - 2 e^{-t/2}) sigma_x
//   F_{x^2}(I) = 8 (e^{-t/2} - 1)^2 n + t I
//   F_{x^4}(I) = 48 t (1 - e^{-t/2})^2 n + 3 t^2 I
inline Hermitian2 naive_moment(const PointerFunction& h, int power) {
    if (const auto* p = std::get_if<NaiveLinear>(&h)) {
        const double t = p->t;
        const double a = 2.0 - 2.0 * std::exp(-0.5 * t);
        if (power == 1) return pauli::sigma_x;
        return Hermitian2::from_parts(2.0 + t / (a * a), complexd{}, t / (a * a));
    }
    const auto& p = std::get<NaiveQuadratic>(h);
    const double t = p.t;
    const double d = -std::expm1(-0.5 * t);  // 1 - e^{-t/2}
    if (power == 1) return pauli::sigma_z;
    const double cI = t * t / (8.0 * d * d * d * d) + 1.0;
    const double cn = 2.0 * t / (d * d) - 4.0;
    return Hermitian2::from_parts(cI + cn, complexd{}, cI);
}

}  // namespace detail

/// Quadrature of int h(y)^power p(y) dy in the operator basis
/// {I, sigma_x, sigma_+sigma_-}; naive pointers use their closed forms.
inline Hermitian2 moment_matrix(const PointerFunction& h, int power, const TimeHorizon& horizon) {
    if (power != 1 && power != 2)
        throw std::invalid_argument("moment_matrix: power must be 1 or 2");
    if (detail::is_naive(h)) return detail::naive_moment(h, power);

    const double b = horizon.beta;
    const double inf = std::numeric_limits<double>::infinity();
    auto hp = [&](double y) {
        const double v = evaluate(h, y);
        return power == 1 ? v : v * v;
    };
    const double cI = integrate([&](double y) { return hp(y) * gaussian_pdf(y); }, -inf, inf, 1e-12);
    const double cx =
        b * integrate([&](double y) { return hp(y) * y * gaussian_pdf(y); }, -inf, inf, 1e-12);
    const double cn = b * b *
                      integrate([&](double y) { return hp(y) * (y * y - 1.0) * gaussian_pdf(y); },
                                -inf, inf, 1e-12);
    return Hermitian2::from_parts(cI + cn, complexd{cx}, cI);
}

/// Quality report for an unbiased pointer; rejects a biased one naming the
/// violated moment.  d1/d2 are the diagonal entries of M(h^2) - target^2 in
/// the basis where sigma_+sigma_- = diag(1, 0).
inline QualityReport quality(const PointerFunction& h, const Hermitian2& target,
                             const TimeHorizon& horizon) {
    const Hermitian2 m1 = moment_matrix(h, 1, horizon);
    static const char* kMomentNames[3] = {"identity moment", "sigma_x moment",
                                          "sigma_+sigma_- moment"};
    // Compare in the same operator basis used by the constraint solvers.
    const double dI = m1.diag(1) - target.diag(1);
    const double dx = std::real(m1(0, 1)) - std::real(target(0, 1));
    const double dn = (m1.diag(0) - m1.diag(1)) - (target.diag(0) - target.diag(1));
    const double defect[3] = {dI, dx, dn};
    for (int i = 0; i < 3; ++i) {
        if (std::abs(defect[i]) > 1e-8)
            throw std::invalid_argument(std::string("quality: pointer is biased, violated ") +
                                        kMomentNames[i]);
    }

    const Hermitian2 m2 = moment_matrix(h, 2, horizon);
    const ComplexMatrix2 dev = m2.matrix() - (target.matrix() * target.matrix());
    if (std::abs(dev(0, 1)) > 1e-9)
        throw std::logic_error("quality: M(h^2) - target^2 is not diagonal");

    QualityReport rep;
    rep.d1 = std::real(dev(0, 0));
    rep.d2 = std::real(dev(1, 1));
    rep.sigma_sq = std::max(rep.d1, rep.d2);
    if (rep.sigma_sq < 0.0) {
        if (rep.sigma_sq < -1e-12) throw std::logic_error("quality: negative added variance");
        rep.sigma_sq = 0.0;
    }
    rep.sigma = std::sqrt(rep.sigma_sq);
    rep.pointer = h;
    rep.horizon = horizon;
    return rep;
}

/// sigma^2(t) = t / (2 - 2 e^{-t/2})^2 + 1 for the naive sigma_x pointer.
inline double naive_quality_x(double t) {
    if (!(t > 0.0)) throw std::domain_error("naive_quality_x: t must be > 0");
    const double a = 2.0 - 2.0 * std::exp(-0.5 * t);
    return t / (a * a) + 1.0;
}

/// sigma~^2(t) = t^2/(8(e^{-t/2}-1)^4) + (2t - 4(e^{-t/2}-1)^2)/(e^{-t/2}-1)^2.
inline double naive_quality_z(double t) {
    if (!(t > 0.0)) throw std::domain_error("naive_quality_z: t must be > 0");
    const double d = std::expm1(-0.5 * t);
    const double d2 = d * d;
    return t * t / (8.0 * d2 * d2) + (2.0 * t - 4.0 * d2) / d2;
}

/// Returns sigma sigma~ and enforces the joint-measurement bound >= 1.
inline double heisenberg_check(const QualityReport& report_x, const QualityReport& report_z) {
    auto is_x_family = [](const PointerFunction& p) {
        return std::holds_alternative<NaiveLinear>(p) || std::holds_alternative<Linear>(p) ||
               std::holds_alternative<RationalX>(p);
    };
    if (!is_x_family(report_x.pointer) || is_x_family(report_z.pointer))
        throw std::invalid_argument("heisenberg_check: reports must target sigma_x and sigma_z");
    const double product = report_x.sigma * report_z.sigma;
    if (product < 1.0 - 1e-9)
        throw std::logic_error("heisenberg_check: sigma sigma~ fell below 1; implementation bug");
    return product;
}

/// Closed-form d1/d2 of the solved rational families as functions of the
/// free pole parameter.
struct RationalQuality {
    double d1, d2, c_first, c_second;  // coefficients: (C1, -) or (D2, D3)
};

inline RationalQuality rational_x_quality(double eps, double beta) {
    const double s2pi = std::sqrt(2.0 * std::numbers::pi);
    const double I = integral_I(eps), J = integral_J(eps);
    const double c1 = s2pi / (beta * (s2pi - eps * I));
    const double d2 = c1 * c1 / s2pi * (I - eps * J) - 1.0;
    const double d1 =
        c1 * c1 * beta * beta / s2pi * (s2pi - (1.0 + 2.0 * eps) * I + eps * (1.0 + eps) * J) + d2;
    return {d1, d2, c1, 0.0};
}

inline RationalQuality rational_z_quality(double delta, double beta) {
    const double s2pi = std::sqrt(2.0 * std::numbers::pi);
    const double I = integral_I(delta), J = integral_J(delta);
    const double D2 = 2.0 * s2pi / (beta * beta * (s2pi - (1.0 + delta) * I));
    const double D3 = -(s2pi + I * D2) / s2pi;
    const double a = D2 * D2 * J / s2pi + 2.0 * D2 * D3 * I / s2pi + D3 * D3;
    const double b = beta * beta *
                     (D2 * D2 * (I - (1.0 + delta) * J) + 2.0 * D2 * D3 * (s2pi - (1.0 + delta) * I)) /
                     s2pi;
    return {a + b - 1.0, a - 1.0, D2, D3};
}

}  // namespace hpl
