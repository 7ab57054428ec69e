#pragma once

// 2x2 complex matrix algebra for a decaying two-level atom: Pauli and
// ladder operators, the decay generator L, its semigroup exp(tL) in closed
// form on the operator basis {I, sigma_x, sigma_y, sigma_+sigma_-}, and
// closed-form operator norms.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace hpl {

using complexd = std::complex<double>;

struct ComplexMatrix2 {
    // Row-major entries: m[2*i + j].
    std::array<complexd, 4> m{};

    complexd& operator()(int i, int j) { return m[2 * i + j]; }
    const complexd& operator()(int i, int j) const { return m[2 * i + j]; }

    static ComplexMatrix2 zero() { return {}; }
    static ComplexMatrix2 identity() { return {{complexd{1.0}, {}, {}, complexd{1.0}}}; }

    ComplexMatrix2 adjoint() const {
        return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }
    complexd trace() const { return m[0] + m[3]; }

    ComplexMatrix2& operator+=(const ComplexMatrix2& o) {
        for (int i = 0; i < 4; ++i) m[i] += o.m[i];
        return *this;
    }
    ComplexMatrix2& operator-=(const ComplexMatrix2& o) {
        for (int i = 0; i < 4; ++i) m[i] -= o.m[i];
        return *this;
    }
    ComplexMatrix2& operator*=(complexd s) {
        for (int i = 0; i < 4; ++i) m[i] *= s;
        return *this;
    }
};

inline ComplexMatrix2 operator+(ComplexMatrix2 a, const ComplexMatrix2& b) { return a += b; }
inline ComplexMatrix2 operator-(ComplexMatrix2 a, const ComplexMatrix2& b) { return a -= b; }
inline ComplexMatrix2 operator*(complexd s, ComplexMatrix2 a) { return a *= s; }
inline ComplexMatrix2 operator*(ComplexMatrix2 a, complexd s) { return a *= s; }
inline ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
             a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

/// Largest absolute entry of a - b.
inline double max_abs_diff(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
    return d;
}

inline double hermiticity_defect(const ComplexMatrix2& x) {
    double d = std::max(std::abs(std::imag(x.m[0])), std::abs(std::imag(x.m[3])));
    return std::max(d, std::abs(x.m[1] - std::conj(x.m[2])));
}

/// 2x2 Hermitian matrix; construction checks conjugate symmetry to 1e-12.
class Hermitian2 {
  public:
    Hermitian2() = default;
    explicit Hermitian2(const ComplexMatrix2& x, double tol = 1e-12) : m_(x) {
        if (hermiticity_defect(x) > tol)
            throw std::invalid_argument("Hermitian2: matrix is not Hermitian within tolerance");
        // Symmetrize away representation noise below the tolerance.
        m_.m[0] = complexd{std::real(x.m[0])};
        m_.m[3] = complexd{std::real(x.m[3])};
        const complexd off = 0.5 * (x.m[1] + std::conj(x.m[2]));
        m_.m[1] = off;
        m_.m[2] = std::conj(off);
    }

    /// Assemble from the real diagonal and the upper off-diagonal entry.
    static Hermitian2 from_parts(double a00, complexd a01, double a11) {
        Hermitian2 h;
        h.m_ = {{complexd{a00}, a01, std::conj(a01), complexd{a11}}};
        return h;
    }

    const ComplexMatrix2& matrix() const { return m_; }
    complexd operator()(int i, int j) const { return m_(i, j); }
    double diag(int i) const { return std::real(m_(i, i)); }

    /// Eigenvalues via the explicit quadratic formula; the discriminant is a
    /// sum of squares, so no cancellation is possible.
    std::array<double, 2> eigenvalues() const {
        const double a = diag(0), c = diag(1);
        const double mean = 0.5 * (a + c);
        const double r = std::hypot(0.5 * (a - c), std::abs(m_(0, 1)));
        return {mean - r, mean + r};
    }

  private:
    ComplexMatrix2 m_;
};

inline Hermitian2 operator+(const Hermitian2& a, const Hermitian2& b) {
    return Hermitian2(a.matrix() + b.matrix());
}
inline Hermitian2 operator-(const Hermitian2& a, const Hermitian2& b) {
    return Hermitian2(a.matrix() - b.matrix());
}
inline Hermitian2 operator*(double s, const Hermitian2& a) {
    return Hermitian2(complexd{s} * a.matrix());
}

namespace pauli {

inline const ComplexMatrix2 sigma_minus{{complexd{}, complexd{}, complexd{1.0}, complexd{}}};
inline const ComplexMatrix2 sigma_plus{{complexd{}, complexd{1.0}, complexd{}, complexd{}}};
inline const Hermitian2 sigma_x = Hermitian2::from_parts(0.0, complexd{1.0}, 0.0);
inline const Hermitian2 sigma_y = Hermitian2::from_parts(0.0, complexd{0.0, -1.0}, 0.0);
inline const Hermitian2 sigma_z = Hermitian2::from_parts(1.0, complexd{}, -1.0);
inline const Hermitian2 number = Hermitian2::from_parts(1.0, complexd{}, 0.0);  // sigma_+ sigma_-
inline const Hermitian2 identity = Hermitian2::from_parts(1.0, complexd{}, 1.0);

}  // namespace pauli

/// Qubit state as a Bloch vector (Px, Py, Pz), |P| <= 1.
struct BlochVector {
    double px = 0.0, py = 0.0, pz = 0.0;

    BlochVector() = default;
    BlochVector(double x, double y, double z) : px(x), py(y), pz(z) {
        if (norm_sq() > 1.0 + 1e-12)
            throw std::invalid_argument("BlochVector: |P| exceeds 1");
    }
    double norm_sq() const { return px * px + py * py + pz * pz; }

    Hermitian2 density_matrix() const {
        return Hermitian2::from_parts(0.5 * (1.0 + pz), 0.5 * complexd{px, -py}, 0.5 * (1.0 - pz));
    }
};

/// L(X) = -1/2 (n X + X n) + sigma_+ X sigma_-, n = sigma_+ sigma_-.
inline ComplexMatrix2 lindblad_apply(const ComplexMatrix2& x) {
    // n X + X n only touches the first row/column; sigma_+ X sigma_- lifts
    // the ground-ground entry to the excited-excited slot.
    ComplexMatrix2 out;
    out(0, 0) = -x(0, 0) + x(1, 1);
    out(0, 1) = -0.5 * x(0, 1);
    out(1, 0) = -0.5 * x(1, 0);
    out(1, 1) = complexd{};
    return out;
}

inline Hermitian2 lindblad_apply(const Hermitian2& x) {
    return Hermitian2(lindblad_apply(x.matrix()));
}

/// exp(tL)(X) in closed form: the identity component is fixed, coherences
/// decay at rate 1/2, the excited population at rate 1.
inline ComplexMatrix2 evolve_heisenberg(const ComplexMatrix2& x, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("evolve_heisenberg: t must be >= 0");
    const double eh = std::exp(-0.5 * t);
    const double ef = std::exp(-t);
    ComplexMatrix2 out;
    out(0, 0) = x(1, 1) + ef * (x(0, 0) - x(1, 1));
    out(0, 1) = eh * x(0, 1);
    out(1, 0) = eh * x(1, 0);
    out(1, 1) = x(1, 1);
    return out;
}

inline Hermitian2 evolve_heisenberg(const Hermitian2& x, double t) {
    return Hermitian2(evolve_heisenberg(x.matrix(), t));
}

/// Operator norm = largest absolute eigenvalue.
inline double operator_norm(const Hermitian2& x) {
    const auto ev = x.eigenvalues();
    return std::max(std::abs(ev[0]), std::abs(ev[1]));
}

/// rho(X) = 1/2 tr[(I + P . sigma) X].
inline double expectation(const BlochVector& rho, const Hermitian2& x) {
    const double re01 = std::real(x(0, 1)), im01 = std::imag(x(0, 1));
    return 0.5 * (x.diag(0) + x.diag(1)) + 0.5 * rho.pz * (x.diag(0) - x.diag(1)) +
           rho.px * re01 - rho.py * im01;
}

}  // namespace hpl
