#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "hpl/optimizer.hpp"
#include "hpl/quality.hpp"

using namespace hpl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double inf = std::numeric_limits<double>::infinity();

BlochVector random_bloch(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        const double x = u(gen), y = u(gen), z = u(gen);
        if (x * x + y * y + z * z <= 1.0) return {x, y, z};
    }
}

// RK4 oracle for the raw-path moment chain (weight f = 1):
//   F_1(n)' = -F_1(n)                        F_1(n, 0) = n
//   F_x(sx)' = -1/2 F_x(sx) + 2 F_1(n)       F_x(sx, 0) = 0
//   F_x2(I)' = 2 F_x(sx) + I                 F_x2(I, 0) = 0
//   F_x2(n)' = -F_x2(n) + F_1(n)             F_x2(n, 0) = 0
//   F_x3(sx)' = -1/2 F_x3(sx) + 6 F_x2(n) + 3 F_x(sx)
//   F_x4(I)' = 4 F_x3(sx) + 6 F_x2(I)
struct RawChain {
    ComplexMatrix2 f1n, fxsx, fx2i, fx2n, fx3sx, fx4i;
};

RawChain raw_chain_oracle(double t, int steps) {
    RawChain y;
    y.f1n = pauli::number.matrix();
    auto rhs = [](const RawChain& s) {
        RawChain d;
        d.f1n = complexd{-1.0} * s.f1n;
        d.fxsx = complexd{-0.5} * s.fxsx + complexd{2.0} * s.f1n;
        d.fx2i = complexd{2.0} * s.fxsx + ComplexMatrix2::identity();
        d.fx2n = complexd{-1.0} * s.fx2n + s.f1n;
        d.fx3sx = complexd{-0.5} * s.fx3sx + complexd{6.0} * s.fx2n + complexd{3.0} * s.fxsx;
        d.fx4i = complexd{4.0} * s.fx3sx + complexd{6.0} * s.fx2i;
        return d;
    };
    auto axpy = [](const RawChain& s, double a, const RawChain& d) {
        RawChain o;
        o.f1n = s.f1n + complexd{a} * d.f1n;
        o.fxsx = s.fxsx + complexd{a} * d.fxsx;
        o.fx2i = s.fx2i + complexd{a} * d.fx2i;
        o.fx2n = s.fx2n + complexd{a} * d.fx2n;
        o.fx3sx = s.fx3sx + complexd{a} * d.fx3sx;
        o.fx4i = s.fx4i + complexd{a} * d.fx4i;
        return o;
    };
    const double h = t / steps;
    for (int i = 0; i < steps; ++i) {
        const auto k1 = rhs(y);
        const auto k2 = rhs(axpy(y, 0.5 * h, k1));
        const auto k3 = rhs(axpy(y, 0.5 * h, k2));
        const auto k4 = rhs(axpy(y, h, k3));
        auto s = axpy(y, h / 6.0, k1);
        s = axpy(s, h / 3.0, k2);
        s = axpy(s, h / 3.0, k3);
        y = axpy(s, h / 6.0, k4);
    }
    return y;
}
}  // namespace

TEST_CASE("raw-path moment chain closed forms against the ODE oracle") {
    for (double t : {0.8, 2.513, 5.0}) {
        const auto sys = raw_chain_oracle(t, 4000);
        const double em = std::exp(-0.5 * t);
        // F_x2(I) = 8 (e^{-t/2} - 1)^2 n + t I
        ComplexMatrix2 fx2 = complexd{8.0 * (em - 1.0) * (em - 1.0)} * pauli::number.matrix() +
                             complexd{t} * ComplexMatrix2::identity();
        CHECK(max_abs_diff(sys.fx2i, fx2) < 1e-8);
        // F_x4(I) = 48 t (1 - e^{-t/2})^2 n + 3 t^2 I
        ComplexMatrix2 fx4 =
            complexd{48.0 * t * (1.0 - em) * (1.0 - em)} * pauli::number.matrix() +
            complexd{3.0 * t * t} * ComplexMatrix2::identity();
        CHECK(max_abs_diff(sys.fx4i, fx4) < 1e-7);
    }
}

TEST_CASE("naive pointer moments via the F-ODE route") {
    const double t = 2.513;
    const auto hor = TimeHorizon::finite(t);
    const auto sys = raw_chain_oracle(t, 4000);
    const double a1 = 2.0 - 2.0 * std::exp(-0.5 * t);

    const auto m2 = moment_matrix(PointerFunction{NaiveLinear{t}}, 2, hor);
    CHECK(max_abs_diff(m2.matrix(), complexd{1.0 / (a1 * a1)} * sys.fx2i) < 1e-8);

    const auto m1 = moment_matrix(PointerFunction{NaiveLinear{t}}, 1, hor);
    CHECK(max_abs_diff(m1.matrix(), pauli::sigma_x.matrix()) == 0.0);

    // NaiveQuadratic: Ytilde = (w^2 - t)/A - 1, A = 4 (e^{-t/2}-1)^2 = (2-2e^{-t/2})^2.
    const double A2 = 4.0 * std::pow(std::expm1(-0.5 * t), 2);
    CHECK_THAT(a1 * a1, WithinRel(A2, 1e-13));
    const auto mq1 = moment_matrix(PointerFunction{NaiveQuadratic{t}}, 1, hor);
    CHECK(max_abs_diff(mq1.matrix(), pauli::sigma_z.matrix()) == 0.0);
    const auto mq2 = moment_matrix(PointerFunction{NaiveQuadratic{t}}, 2, hor);
    // Assemble M(Ytilde^2) from the oracle chain.
    ComplexMatrix2 want = complexd{1.0 / (A2 * A2)} *
                          (sys.fx4i - complexd{2.0 * t} * sys.fx2i +
                           complexd{t * t} * ComplexMatrix2::identity());
    want -= complexd{2.0 / A2} * (sys.fx2i - complexd{t} * ComplexMatrix2::identity());
    want += ComplexMatrix2::identity();
    CHECK(max_abs_diff(mq2.matrix(), want) < 1e-7);
}

TEST_CASE("moment matrix basics in the normalized picture") {
    const auto hor = TimeHorizon::infinite();
    // Linear at beta = 1, power 2: 2 n + I.
    const auto m = moment_matrix(PointerFunction{Linear{1.0}}, 2, hor);
    CHECK_THAT(m.diag(0), WithinAbs(3.0, 1e-10));
    CHECK_THAT(m.diag(1), WithinAbs(1.0, 1e-10));
    CHECK_THAT(std::abs(m(0, 1)), WithinAbs(0.0, 1e-10));

    // Constant pointer h == 1 (degenerate rational-z member): M(h) = I.
    const auto mc = moment_matrix(PointerFunction{RationalZ{0.0, 0.0, 1.0, 1.0}}, 1, hor);
    CHECK(max_abs_diff(mc.matrix(), ComplexMatrix2::identity()) < 1e-10);

    // General beta: 2 n + beta^{-2} I.
    const auto hb = TimeHorizon::finite(1.5);
    const auto mb = moment_matrix(PointerFunction{Linear{hb.beta}}, 2, hb);
    CHECK_THAT(mb.diag(1), WithinAbs(1.0 / (hb.beta * hb.beta), 1e-9));
    CHECK_THAT(mb.diag(0) - mb.diag(1), WithinAbs(2.0, 1e-9));

    CHECK_THROWS_AS(moment_matrix(PointerFunction{Linear{1.0}}, 3, hor), std::invalid_argument);
}

TEST_CASE("limit qualities of the polynomial families") {
    const auto hor = TimeHorizon::infinite();
    const auto qx = quality(PointerFunction{Linear{1.0}}, pauli::sigma_x, hor);
    CHECK_THAT(qx.sigma_sq, WithinAbs(2.0, 1e-8));
    CHECK_THAT(qx.sigma, WithinAbs(std::sqrt(2.0), 1e-8));

    const auto qz = quality(PointerFunction{Quadratic{1.0}}, pauli::sigma_z, hor);
    CHECK_THAT(qz.sigma_sq, WithinAbs(6.0, 1e-8));
    CHECK_THAT(qz.sigma, WithinAbs(std::sqrt(6.0), 1e-8));
}

TEST_CASE("optimal rational-x quality reproduces the reported constants") {
    const auto hor = TimeHorizon::infinite();
    const auto opt = optimize_pointer_x(1.0);
    const auto q = quality(PointerFunction{rational_x_pointer(opt.argmin, 1.0)}, pauli::sigma_x,
                           hor);
    CHECK_THAT(q.d1, WithinAbs(0.470, 2e-3));
    CHECK_THAT(q.d2, WithinAbs(0.470, 2e-3));
    CHECK_THAT(q.sigma, WithinAbs(0.685, 2e-3));
}

TEST_CASE("closed-form d1/d2 agree with quadrature across the eps range") {
    const auto hor = TimeHorizon::infinite();
    for (double eps = 0.1; eps <= 10.0; eps *= 1.8) {
        const auto closed = rational_x_quality(eps, 1.0);
        const auto q =
            quality(PointerFunction{rational_x_pointer(eps, 1.0)}, pauli::sigma_x, hor);
        CHECK_THAT(q.d1, WithinAbs(closed.d1, 1e-8));
        CHECK_THAT(q.d2, WithinAbs(closed.d2, 1e-8));

        const auto closed_z = rational_z_quality(eps, 1.0);
        const auto qz =
            quality(PointerFunction{rational_z_pointer(eps, 1.0)}, pauli::sigma_z, hor);
        CHECK_THAT(qz.d1, WithinAbs(closed_z.d1, 1e-8));
        CHECK_THAT(qz.d2, WithinAbs(closed_z.d2, 1e-8));
    }
    // Finite horizon too.
    const auto hb = TimeHorizon::finite(2.0);
    const auto c = rational_x_quality(0.7, hb.beta);
    const auto q = quality(PointerFunction{rational_x_pointer(0.7, hb.beta)}, pauli::sigma_x, hb);
    CHECK_THAT(q.d1, WithinAbs(c.d1, 1e-8));
    CHECK_THAT(q.d2, WithinAbs(c.d2, 1e-8));
}

TEST_CASE("naive qualities at the reported optimum") {
    CHECK_THAT(naive_quality_x(2.513), WithinAbs(2.228, 1e-3));
    CHECK_THAT(std::sqrt(naive_quality_x(2.513)), WithinAbs(1.493, 1e-3));
    CHECK_THAT(naive_quality_z(2.513), WithinAbs(8.836, 1e-3));
    CHECK_THAT(std::sqrt(naive_quality_z(2.513)), WithinAbs(2.973, 1e-3));
    CHECK_THAT(std::sqrt(naive_quality_x(2.513) * naive_quality_z(2.513)),
               WithinAbs(4.437, 2e-3));
    // t -> infinity asymptote t/4 + 1.
    CHECK_THAT(naive_quality_x(1e3) / (1e3 / 4.0 + 1.0), WithinAbs(1.0, 0.01));
    CHECK_THROWS_AS(naive_quality_x(0.0), std::domain_error);
    CHECK_THROWS_AS(naive_quality_z(-1.0), std::domain_error);
}

TEST_CASE("naive closed forms equal the quality functional of the naive pointers") {
    for (double t : {1.0, 2.513, 6.0}) {
        const auto hor = TimeHorizon::finite(t);
        const auto qx = quality(PointerFunction{NaiveLinear{t}}, pauli::sigma_x, hor);
        CHECK_THAT(qx.sigma_sq, WithinRel(naive_quality_x(t), 1e-12));
        const auto qz = quality(PointerFunction{NaiveQuadratic{t}}, pauli::sigma_z, hor);
        CHECK_THAT(qz.sigma_sq, WithinRel(naive_quality_z(t), 1e-12));
    }
}

TEST_CASE("heisenberg product checks") {
    const auto hor = TimeHorizon::infinite();
    const auto ox = optimize_pointer_x(1.0);
    const auto oz = optimize_pointer_z(1.0);
    const auto rx = quality(PointerFunction{rational_x_pointer(ox.argmin, 1.0)}, pauli::sigma_x,
                            hor);
    const auto rz = quality(PointerFunction{rational_z_pointer(oz.argmin, 1.0)}, pauli::sigma_z,
                            hor);
    CHECK_THAT(heisenberg_check(rx, rz), WithinAbs(1.056, 5e-3));

    const double t = optimize_naive_time(NaiveAxis::x).argmin;
    const auto hn = TimeHorizon::finite(t);
    const auto nx = quality(PointerFunction{NaiveLinear{t}}, pauli::sigma_x, hn);
    const auto nz = quality(PointerFunction{NaiveQuadratic{t}}, pauli::sigma_z, hn);
    CHECK_THAT(heisenberg_check(nx, nz), WithinAbs(4.437, 2e-3));

    const auto lx = quality(PointerFunction{Linear{1.0}}, pauli::sigma_x, hor);
    const auto lz = quality(PointerFunction{Quadratic{1.0}}, pauli::sigma_z, hor);
    CHECK_THAT(heisenberg_check(lx, lz), WithinAbs(std::sqrt(12.0), 1e-8));

    CHECK_THROWS_AS(heisenberg_check(rz, rx), std::invalid_argument);
}

TEST_CASE("biased pointers are rejected naming the violated moment") {
    const auto hor = TimeHorizon::infinite();
    CHECK_THROWS_WITH(quality(PointerFunction{RationalX{2.0, 0.605}}, pauli::sigma_x, hor),
                      Catch::Matchers::ContainsSubstring("sigma_x moment"));
    CHECK_THROWS_WITH(quality(PointerFunction{RationalZ{0.0, -21.0, 6.0, 2.701}}, pauli::sigma_z,
                              hor),
                      Catch::Matchers::ContainsSubstring("identity moment"));
}

TEST_CASE("added-variance matrix is positive semidefinite") {
    const auto hor = TimeHorizon::infinite();
    for (double eps : {0.3, 0.605, 1.5, 5.0}) {
        const auto h = PointerFunction{rational_x_pointer(eps, 1.0)};
        const auto m1 = moment_matrix(h, 1, hor);
        const auto m2 = moment_matrix(h, 2, hor);
        const Hermitian2 dev(m2.matrix() - m1.matrix() * m1.matrix());
        CHECK(dev.eigenvalues()[0] >= -1e-9);
    }
    for (double delta : {1.0, 2.701, 7.0}) {
        const auto h = PointerFunction{rational_z_pointer(delta, 1.0)};
        const auto m1 = moment_matrix(h, 1, hor);
        const auto m2 = moment_matrix(h, 2, hor);
        const Hermitian2 dev(m2.matrix() - m1.matrix() * m1.matrix());
        CHECK(dev.eigenvalues()[0] >= -1e-9);
    }
}

TEST_CASE("operator-norm quality dominates every sampled state") {
    std::mt19937_64 gen(31);
    const auto hor = TimeHorizon::infinite();
    const auto h = PointerFunction{rational_x_pointer(0.605, 1.0)};
    const auto rep = quality(h, pauli::sigma_x, hor);
    const Hermitian2 target = pauli::sigma_x;
    double worst = -1e30;
    for (int i = 0; i < 500; ++i) {
        const auto rho = random_bloch(gen);
        const double m1 = integrate(
            [&](double y) { return evaluate(h, y) * scalar_density_q(y, hor, rho); }, -inf, inf,
            1e-11);
        const double m2 = integrate(
            [&](double y) {
                const double v = evaluate(h, y);
                return v * v * scalar_density_q(y, hor, rho);
            },
            -inf, inf, 1e-11);
        const double tx = expectation(rho, target);
        const double tx2 = expectation(rho, Hermitian2(target.matrix() * target.matrix()));
        const double added = (m2 - m1 * m1) - (tx2 - tx * tx);
        CHECK(added <= rep.sigma_sq + 1e-6);
        worst = std::max(worst, added);
    }
    // The bound is tight: some state comes close to the operator norm.
    CHECK(worst >= rep.sigma_sq - 0.05);
}
