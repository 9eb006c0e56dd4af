#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bosejump/quadrature.hpp"
#include "bosejump/rh_solver.hpp"
#include "bosejump/saddle.hpp"

using namespace bosejump;
using doctest::Approx;

namespace ref {
// tests/oracles/reference_values.py; α = 0 values from 30-digit mpmath.
constexpr double v1_0 = 0.7104460895987631;
constexpr double v1_half = 0.37669228055870974;
constexpr double v1_1 = 0.2686565076878897;
constexpr double vp_0_half = 0.6224939650846643;
constexpr double v_0_minus_one = -0.5180942581521571;
}  // namespace ref

constexpr double pi = std::numbers::pi;

namespace {
const Factorization& fact0() {
    static const Factorization f(AlphaModel(0.0), build_theta_table(exact_source(AlphaModel(0.0))), 1.0);
    return f;
}
const Factorization& fact1() {
    static const Factorization f(AlphaModel(1.0), build_theta_table(exact_source(AlphaModel(1.0))), 1.0);
    return f;
}
}  // namespace

TEST_CASE("v1_coefficient: against independent quadrature") {
    const auto r0 = v1_coefficient(fact0().table());
    CHECK(std::abs(r0.value - ref::v1_0) <= 1e-12);
    CHECK(std::abs(r0.value - 0.71045) <= 5e-5);
    CHECK(std::isnan(r0.tail_exponent));

    const auto rh = v1_coefficient(build_theta_table(exact_source(AlphaModel(0.5))));
    CHECK(std::abs(rh.value - ref::v1_half) <= 1e-10);

    const auto r1 = v1_coefficient(fact1().table());
    CHECK(std::abs(r1.value - ref::v1_1) <= r1.error);
    CHECK(r1.error < 1e-6);
    CHECK(r1.tail > 0.0);

    CHECK_THROWS_AS(v1_coefficient(build_theta_table(exact_source(AlphaModel(2.0)))), DivergenceError);
}

TEST_CASE("v1_coefficient: saddle surrogate is the Case problem rescaled") {
    const double w0 = saddle_root(2.0);
    const auto s = v1_coefficient(build_theta_table(surrogate_source(2.0, w0)));
    CHECK(s.value == Approx(std::pow(w0, -2.0) * ref::v1_0).epsilon(1e-6));
    const auto s0 = v1_coefficient(build_theta_table(surrogate_source(0.0, saddle_root(0.0))));
    CHECK(std::abs(s0.value - ref::v1_0) <= 1e-12);
}

TEST_CASE("Factorization: constants") {
    const auto& f = fact0();
    CHECK(f.k0() == f.v1() * f.k());
    CHECK(f.c0() == -2.0 * f.l0() * f.k());
    CHECK(f.v1() > 0.0);
    CHECK(fact1().v1() > 0.0);
}

TEST_CASE("V(z): principal value, real axis, decay and symmetry") {
    const auto& f = fact0();
    CHECK(f.v_principal(0.5) == Approx(ref::vp_0_half).epsilon(1e-11));
    const cplx vm1 = f.v_transform(-1.0);
    CHECK(vm1.real() == Approx(ref::v_0_minus_one).epsilon(1e-11));
    CHECK(std::abs(vm1.imag()) <= 1e-15);
    const cplx far = f.v_transform({0.0, 1e6});
    CHECK(std::abs(far) <= 2 * f.v1() / 1e6);
    for (const auto& f : {&fact0(), &fact1()}) {
        for (cplx z : {cplx(0.3, 0.4), cplx(-2.0, 0.1), cplx(5.0, 3.0)})
            CHECK(std::abs(f->v_transform(std::conj(z)) - std::conj(f->v_transform(z))) <= 1e-14);
    }
    CHECK_THROWS_AS(f.v_transform(0.5), DomainError);
    CHECK_THROWS_AS(f.v_principal(1.0), RangeError);
    // Plemelj: V^± differ by ±i(θ - π).
    const cplx vu = f.v_boundary(0.3, Side::above), vd = f.v_boundary(0.3, Side::below);
    const double theta = f.table().at(0.3).theta;
    CHECK((vu - vd).imag() == Approx(2 * (theta - pi)).epsilon(1e-13));
    CHECK(std::abs(f.v_transform({0.3, 1e-7}) - vu) <= 1e-5);
}

TEST_CASE("X(z): normalisation at infinity, pole, boundary ratio") {
    for (const auto* f : {&fact0(), &fact1()}) {
        const cplx z(1e7, 3e6);
        CHECK(std::abs(z * f->x_factor(z) - 1.0) <= 1e-6);
        const cplx w(0.7, -0.2);
        CHECK(std::abs(f->x_factor(std::conj(w)) - std::conj(f->x_factor(w))) <= 1e-14 * std::abs(f->x_factor(w)));
        CHECK_THROWS_AS(f->x_factor(0.0), DomainError);
    }
    const auto& f = fact0();
    const double mu = 0.3;
    const cplx ratio = f.x_boundary(mu, Side::above) / f.x_boundary(mu, Side::below);
    const auto s = lambda_boundary(AlphaModel(0.0), mu);
    const cplx lp(s.lambda_real, s.im_plus);
    CHECK(std::abs(ratio - lp / std::conj(lp)) <= 1e-12);
    CHECK(std::abs(ratio - std::exp(cplx(0.0, 2 * (s.theta - pi)))) <= 1e-12);
}

TEST_CASE("n(η): zero outside the support, linear in K, vanishing ηn at 0") {
    const AlphaModel m(0.0);
    const auto table = build_theta_table(exact_source(m));
    const Factorization f1(m, table, 1.0), f2(m, table, 2.0), fz(m, table, 0.0);
    for (double eta : {0.01, 0.3, 0.9}) {
        CHECK(f2.n_coefficient(eta).n_value == Approx(2 * f1.n_coefficient(eta).n_value).epsilon(1e-14));
        CHECK(fz.n_coefficient(eta).n_value == 0.0);
        CHECK(std::isfinite(f1.n_coefficient(eta).n_value));
    }
    CHECK(f1.n_coefficient(1.0).n_value == 0.0);
    CHECK(f1.n_coefficient(1.5).n_value == 0.0);
    // n(0⁺) is finite (e^{-Vp} ~ 1/η cancels sin θ ~ η), so ηn vanishes linearly.
    const double r = (1e-8 * fact1().n_coefficient(1e-8).n_value) / (1e-6 * fact1().n_coefficient(1e-6).n_value);
    CHECK(r == Approx(1e-2).epsilon(1e-2));
}

TEST_CASE("n(η): C0 z e^{-V(z)} = C0 (z - V1) + ∫ η n(η)/(η - z) dη") {
    // The continuum coefficient is the jump of C0/X; its Cauchy transform
    // rebuilds C0/X up to the polynomial part at infinity.
    const auto& f = fact0();
    for (cplx z : {cplx(-1.0, 0.0), cplx(0.5, 0.5), cplx(2.0, -1.0)}) {
        const cplx lhs = f.c0() * z * std::exp(-f.v_transform(z));
        const cplx integral = integrate_adaptive<cplx>(
            [&](double eta) { return eta * f.n_coefficient(eta).n_value / (eta - z); }, 0.0, 1.0, 1e-12);
        const cplx rhs = f.c0() * (z - f.v1()) + integral;
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(lhs));
    }
}
