#pragma once

// Post-processing pointer functions h applied to the measurement record.
// The naive pair acts on the raw integrated photocurrent at time t; the
// other four families act on the normalized weighted-path endpoint.  The
// rational families are only constructible through the unbiasedness
// solvers, which pin their coefficients as functions of (eps, beta) and
// (delta, beta) respectively.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

#include "hpl/endpoint_density.hpp"
#include "hpl/quadrature.hpp"
#include "hpl/special_functions.hpp"

namespace hpl {

/// h(w) = w / (2 - 2 e^{-t/2}); unbiased for sigma_x on the raw path.
struct NaiveLinear {
    double t;
};

/// h(w) = (w^2 - t) / (4 (e^{-t/2} - 1)^2) - 1; unbiased for sigma_z.
struct NaiveQuadratic {
    double t;
};

/// h(y) = y / beta; the polynomial solution of the sigma_x constraints.
struct Linear {
    double beta;
};

/// h(y) = y^2/beta^2 - 1 - 1/beta^2; the polynomial solution of the
/// sigma_z constraints.
struct Quadratic {
    double beta;
};

/// h(y) = c1 y / (y^2 + eps); odd, bounded, vanishing at infinity.
struct RationalX {
    double c1;
    double eps;
};

/// h(y) = (d1 y + d2) / (y^2 + delta) + d3; d1 = 0 for every unbiased
/// member, so the stored family is even with asymptote d3.
struct RationalZ {
    double d1;
    double d2;
    double d3;
    double delta;
};

using PointerFunction =
    std::variant<NaiveLinear, NaiveQuadratic, Linear, Quadratic, RationalX, RationalZ>;

inline double evaluate(const PointerFunction& h, double y) {
    struct Visitor {
        double y;
        double operator()(const NaiveLinear& p) const {
            return y / (2.0 - 2.0 * std::exp(-0.5 * p.t));
        }
        double operator()(const NaiveQuadratic& p) const {
            const double d = std::expm1(-0.5 * p.t);  // e^{-t/2} - 1
            return (y * y - p.t) / (4.0 * d * d) - 1.0;
        }
        double operator()(const Linear& p) const { return y / p.beta; }
        double operator()(const Quadratic& p) const {
            const double ib2 = 1.0 / (p.beta * p.beta);
            return ib2 * y * y - 1.0 - ib2;
        }
        double operator()(const RationalX& p) const {
            if (std::abs(y) > 1e150) return 0.0;  // asymptote, never overflow
            return p.c1 * y / (y * y + p.eps);
        }
        double operator()(const RationalZ& p) const {
            if (std::abs(y) > 1e150) return p.d3;
            return (p.d1 * y + p.d2) / (y * y + p.delta) + p.d3;
        }
    };
    return std::visit(Visitor{y}, h);
}

/// Coefficients produced by an unbiasedness solve together with the three
/// moment-constraint residuals, re-evaluated by quadrature.
struct ConstraintSolution {
    std::vector<double> coefficients;
    std::vector<double> residuals;

    double max_residual() const {
        double m = 0.0;
        for (double r : residuals) m = std::max(m, std::abs(r));
        return m;
    }
};

namespace detail {

// Residuals of int h(y) p(y) dy = target, reported in the operator basis
// {I, sigma_x, sigma_+sigma_-}: target contributes (cI, cx, cn).
inline std::vector<double> moment_residuals(const PointerFunction& h, double beta, double cI,
                                            double cx, double cn) {
    auto hv = [&](double y) { return evaluate(h, y); };
    const double inf = std::numeric_limits<double>::infinity();
    const double mI = integrate([&](double y) { return hv(y) * gaussian_pdf(y); }, -inf, inf, 1e-12);
    const double mx =
        beta * integrate([&](double y) { return hv(y) * y * gaussian_pdf(y); }, -inf, inf, 1e-12);
    const double mn = beta * beta *
                      integrate([&](double y) { return hv(y) * (y * y - 1.0) * gaussian_pdf(y); },
                                -inf, inf, 1e-12);
    return {mI - cI, mx - cx, mn - cn};
}

}  // namespace detail

/// Solve int h p dy = sigma_x for h(y) = (C1 y + C2)/(y^2+eps) + C3.
/// The constraints force C2 = C3 = 0 and
/// C1 = sqrt(2 pi) / (beta (sqrt(2 pi) - eps I(eps))).
inline ConstraintSolution solve_unbiased_x(double eps, double beta) {
    if (!(eps > 0.0)) throw std::domain_error("solve_unbiased_x: eps must be > 0");
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::domain_error("solve_unbiased_x: beta must be in (0, 1]");
    const double s2pi = std::sqrt(2.0 * std::numbers::pi);
    const double denom = beta * (s2pi - eps * integral_I(eps));
    if (std::abs(denom) < 1e-12)
        throw std::runtime_error("solve_unbiased_x: degenerate constraint denominator");
    const double c1 = s2pi / denom;
    ConstraintSolution sol;
    sol.coefficients = {c1, 0.0, 0.0};
    sol.residuals = detail::moment_residuals(RationalX{c1, eps}, beta, 0.0, 1.0, 0.0);
    return sol;
}

/// Solve int h p dy = sigma_z for h(y) = (D1 y + D2)/(y^2+delta) + D3.
/// The sigma_x constraint reads D1 (sqrt(2 pi) - delta I(delta)) = 0; since
/// eps I(eps) < sqrt(2 pi) for every eps > 0 the bracket never vanishes and
/// D1 = 0 is the only branch.
inline ConstraintSolution solve_unbiased_z(double delta, double beta) {
    if (!(delta > 0.0)) throw std::domain_error("solve_unbiased_z: delta must be > 0");
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::domain_error("solve_unbiased_z: beta must be in (0, 1]");
    const double s2pi = std::sqrt(2.0 * std::numbers::pi);
    const double Id = integral_I(delta);
    const double denom = beta * beta * (s2pi - (1.0 + delta) * Id);
    if (std::abs(denom) < 1e-12)
        throw std::runtime_error("solve_unbiased_z: degenerate constraint denominator");
    const double d2 = 2.0 * s2pi / denom;
    const double d3 = -(s2pi + Id * d2) / s2pi;
    ConstraintSolution sol;
    sol.coefficients = {0.0, d2, d3};
    sol.residuals = detail::moment_residuals(RationalZ{0.0, d2, d3, delta}, beta, -1.0, 0.0, 2.0);
    return sol;
}

inline RationalX rational_x_pointer(double eps, double beta) {
    return RationalX{solve_unbiased_x(eps, beta).coefficients[0], eps};
}

inline RationalZ rational_z_pointer(double delta, double beta) {
    const auto sol = solve_unbiased_z(delta, beta);
    return RationalZ{0.0, sol.coefficients[1], sol.coefficients[2], delta};
}

/// Real solutions of c1 y / (y^2 + eps) = x.  Empty beyond the extrema
/// +-c1/(2 sqrt(eps)); a single merged root on the extrema and at x = 0.
inline std::vector<double> preimages_x(double x, double c1, double eps) {
    if (x == 0.0) return {0.0};
    double disc = c1 * c1 - 4.0 * x * x * eps;
    // Merge the double root across rounding noise at the support edge.
    if (std::abs(disc) < 1e-13 * c1 * c1) disc = 0.0;
    if (disc < 0.0) return {};
    // Root of larger magnitude is cancellation-free; its partner follows
    // from the product y+ y- = eps.
    const double far = (c1 + std::sqrt(disc)) / (2.0 * x);
    const double near = eps / far;
    if (disc == 0.0 || far == near) return {far};
    return x > 0.0 ? std::vector<double>{near, far} : std::vector<double>{far, near};
}

/// Real solutions of d2 / (y^2 + delta) + d3 = x with d1 = 0.  Empty
/// outside [d3 + d2/delta, d3]; x = d3 is the image of y -> +-infinity and
/// returns no finite preimage.
inline std::vector<double> preimages_z(double x, double d2, double d3, double delta) {
    if (x == d3) return {};
    const double rad = ((x - d3) * delta - d2) / (d3 - x);
    if (rad < 0.0) return {};
    const double y = std::sqrt(rad);
    if (y == 0.0) return {0.0};
    return {-y, y};
}

}  // namespace hpl
