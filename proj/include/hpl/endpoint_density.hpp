#pragma once

// Law of the normalized weighted-path endpoint Y_t: the matrix-valued
// characteristic function F_k(I) in closed form, an independent Runge-Kutta
// oracle for it, the matrix density p(y), and the scalar density q(y) of a
// given initial state.  All densities here live in the normalized picture
// (beta_t = sqrt(1 - e^{-t})); only the naive Section-3 pointers use the
// raw path variable.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hpl/qubit.hpp"
#include "hpl/special_functions.hpp"

namespace hpl {

/// Measurement horizon; beta = 1 encodes the infinite-time limit exactly.
struct TimeHorizon {
    double t = 0.0;
    double beta = 0.0;

    static TimeHorizon finite(double t) {
        if (!(t >= 0.0)) throw std::invalid_argument("TimeHorizon: t must be >= 0");
        return {t, std::sqrt(-std::expm1(-t))};
    }
    static TimeHorizon infinite() {
        return {std::numeric_limits<double>::infinity(), 1.0};
    }
    bool is_infinite() const { return std::isinf(t); }
};

inline double gaussian_pdf(double y) {
    return std::exp(-0.5 * y * y) / std::sqrt(2.0 * std::numbers::pi);
}

inline double gaussian_cdf(double y) {
    return 0.5 * (1.0 + erf(y / std::sqrt(2.0)));
}

/// Closed-form F_k(I) = e^{-k^2 m/2} (I - ik m sigma_x - k^2 m^2 n),
/// m = 1 - e^{-t}, for the un-normalized weighted path.
inline ComplexMatrix2 characteristic_matrix(double k, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("characteristic_matrix: t must be >= 0");
    const double m = -std::expm1(-t);
    const double amp = std::exp(-0.5 * k * k * m);
    ComplexMatrix2 out;
    out(0, 0) = amp * (1.0 - k * k * m * m);
    out(0, 1) = amp * complexd{0.0, -k * m};
    out(1, 0) = out(0, 1);
    out(1, 1) = complexd{amp};
    return out;
}

/// State of the coupled characteristic-function system.
struct CharacteristicOdeState {
    ComplexMatrix2 f_identity;   // F_k(I)
    ComplexMatrix2 f_sigma_x;    // F_k(sigma_- + sigma_+)
    ComplexMatrix2 f_number;     // F_k(sigma_+ sigma_-)
};

/// Classical RK4 integration of the three-equation system
///   F_I'  = -ik e^{-s/2} F_x - (k^2 e^{-s}/2) F_I
///   F_x'  = -1/2 F_x - 2ik e^{-s/2} F_n - (k^2 e^{-s}/2) F_x
///   F_n'  = -F_n - (k^2 e^{-s}/2) F_n
/// from F_I(0)=I, F_x(0)=sigma_x, F_n(0)=n.  Used purely as an oracle for
/// the closed form above.
inline CharacteristicOdeState ode_oracle_system(double k, double t, int steps) {
    if (steps < 100) throw std::invalid_argument("ode_oracle_system: steps must be >= 100");
    if (!(t >= 0.0)) throw std::invalid_argument("ode_oracle_system: t must be >= 0");

    CharacteristicOdeState y{ComplexMatrix2::identity(), pauli::sigma_x.matrix(),
                             pauli::number.matrix()};
    const double h = t / steps;

    auto rhs = [k](const CharacteristicOdeState& s, double time) {
        const double eh = std::exp(-0.5 * time);
        const double damp = 0.5 * k * k * std::exp(-time);
        const complexd ik{0.0, k};
        CharacteristicOdeState d;
        d.f_identity = complexd{-1.0} * ik * eh * s.f_sigma_x - complexd{damp} * s.f_identity;
        d.f_sigma_x = complexd{-0.5 - damp} * s.f_sigma_x - complexd{2.0} * ik * eh * s.f_number;
        d.f_number = complexd{-1.0 - damp} * s.f_number;
        return d;
    };
    auto axpy = [](const CharacteristicOdeState& s, double a, const CharacteristicOdeState& d) {
        CharacteristicOdeState out;
        out.f_identity = s.f_identity + complexd{a} * d.f_identity;
        out.f_sigma_x = s.f_sigma_x + complexd{a} * d.f_sigma_x;
        out.f_number = s.f_number + complexd{a} * d.f_number;
        return out;
    };

    for (int i = 0; i < steps; ++i) {
        const double s0 = i * h;
        const auto k1 = rhs(y, s0);
        const auto k2 = rhs(axpy(y, 0.5 * h, k1), s0 + 0.5 * h);
        const auto k3 = rhs(axpy(y, 0.5 * h, k2), s0 + 0.5 * h);
        const auto k4 = rhs(axpy(y, h, k3), s0 + h);
        CharacteristicOdeState sum = axpy(y, h / 6.0, k1);
        sum = axpy(sum, h / 3.0, k2);
        sum = axpy(sum, h / 3.0, k3);
        y = axpy(sum, h / 6.0, k4);
    }
    return y;
}

inline ComplexMatrix2 ode_oracle_Fk(double k, double t, int steps) {
    return ode_oracle_system(k, t, steps).f_identity;
}

/// Matrix density of the normalized endpoint:
/// p(y) = g(y) (I + beta y sigma_x + beta^2 (y^2 - 1) n).
inline Hermitian2 matrix_density_p(double y, const TimeHorizon& horizon) {
    const double g = gaussian_pdf(y);
    const double b = horizon.beta;
    return Hermitian2::from_parts(g * (1.0 + b * b * (y * y - 1.0)), complexd{g * b * y}, g);
}

/// One sample of the matrix density, positive semidefinite for every
/// horizon.
struct MatrixDensityPoint {
    double y = 0.0;
    Hermitian2 value;
};

inline MatrixDensityPoint matrix_density_point(double y, const TimeHorizon& horizon) {
    return {y, matrix_density_p(y, horizon)};
}

/// Scalar density q(y) = rho(p(y)).  Tiny negative values from rounding are
/// clamped to zero so samplers never see a negative density.
inline double scalar_density_q(double y, const TimeHorizon& horizon, const BlochVector& rho) {
    const double b = horizon.beta;
    double v = gaussian_pdf(y) *
               (1.0 + b * rho.px * y + b * b * (y * y - 1.0) * 0.5 * (rho.pz + 1.0));
    if (v < 0.0 && v > -1e-12) v = 0.0;
    return v;
}

/// Exact antiderivative of q: integrals of g, y g and (y^2-1) g are
/// Phi(y), -g(y) and -y g(y).
inline double scalar_cdf_q(double y, const TimeHorizon& horizon, const BlochVector& rho) {
    const double b = horizon.beta;
    const double g = gaussian_pdf(y);
    double v = gaussian_cdf(y) - b * rho.px * g - b * b * 0.5 * (rho.pz + 1.0) * y * g;
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace hpl
