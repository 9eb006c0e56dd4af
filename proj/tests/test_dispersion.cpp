#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bosejump/dispersion.hpp"

using namespace bosejump;
using doctest::Approx;

namespace ref {
// tests/oracles/reference_values.py
constexpr double lambda_c_2 = -0.09861228866810956;
const cplx lambda_c_z(0.28824683874564394, 0.13942064097017407);  // z = 0.3 + 0.7i
constexpr double re_a1_half = -0.08589097617411216, im_a1_half = 0.03210055945041959;
constexpr double re_a2_three = -0.00014636659504537516, im_a2_three = 1.9233677685194413e-05;
}  // namespace ref

constexpr double pi = std::numbers::pi;

TEST_CASE("lambda_case: values, asymptote and the cut") {
    CHECK(std::abs(lambda_case(0.0) - 1.0) == 0.0);
    CHECK(lambda_case(2.0).real() == Approx(ref::lambda_c_2).epsilon(1e-14));
    CHECK(lambda_case(2.0).imag() == 0.0);
    CHECK(std::abs(lambda_case({0.3, 0.7}) - ref::lambda_c_z) <= 1e-15);
    const cplx z(0.0, 1e3);
    CHECK(std::abs(z * z * lambda_case(z) + 1.0 / 3.0) <= 1e-6);
    CHECK_THROWS_AS(lambda_case(0.5), DomainError);
    CHECK_THROWS_AS(lambda_case(-1.0), DomainError);
    CHECK(lambda_case_real(0.5) == Approx(1 - 0.25 * std::log(3.0)).epsilon(1e-15));
    CHECK(lambda_case_real(-2.0) == Approx(ref::lambda_c_2).epsilon(1e-14));
}

TEST_CASE("lambda_case_boundary: Plemelj values on the slit") {
    CHECK(std::abs(lambda_case_boundary(0.0, Side::above) - 1.0) == 0.0);
    const cplx up = lambda_case_boundary(0.5, Side::above);
    CHECK(up.real() == Approx(1 - 0.25 * std::log(3.0)).epsilon(1e-15));
    CHECK(up.imag() == Approx(pi / 4).epsilon(1e-15));
    CHECK(lambda_case_boundary(0.5, Side::below) == std::conj(up));
    CHECK(lambda_case_boundary(1 - 1e-12, Side::above).real() < -10.0);
    CHECK_THROWS_AS(lambda_case_boundary(1.0, Side::above), DomainError);
    // Limits from the complex plane.
    const cplx above = lambda_case(cplx(0.5, 1e-9));
    CHECK(std::abs(above - up) <= 1e-8);
}

TEST_CASE("lambda_general: reduction, normalisation and decay") {
    const AlphaModel a0(0.0), a2(2.0);
    CHECK(std::abs(lambda_general(a0, {0.0, 2.0}) - lambda_case({0.0, 2.0})) <= 1e-14);
    CHECK(std::abs(lambda_general(a2, {1e-9, 1e-9}) - 1.0) <= 1e-6);
    CHECK_THROWS_AS(lambda_general(a2, 0.5), DomainError);

    // z²λ(z) → -l0(-α)/(3 l0(α)); for α = 2 the approach is slow, only |z|^{-1/2}.
    const double lim = -a2.l0_neg() / (3 * a2.l0());
    double prev = 1e300;
    for (double r : {10.0, 100.0, 1e3, 1e4}) {
        const cplx z(0.0, r);
        const double dev = std::abs(z * z * lambda_general(a2, z) - lim) / std::abs(lim);
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("lambda_general: conjugate symmetry") {
    std::mt19937 gen(12345);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (double alpha : {0.0, 1.0, 2.0}) {
        const AlphaModel m(alpha);
        for (int i = 0; i < 20; ++i) {
            cplx z(u(gen), u(gen));
            if (std::abs(z.imag()) < 1e-3) z += cplx(0.0, 0.1);
            const cplx a = lambda_general(m, std::conj(z));
            const cplx b = std::conj(lambda_general(m, z));
            CHECK(std::abs(a - b) <= 1e-14 * std::abs(b));
        }
    }
}

TEST_CASE("lambda_boundary: reduction at α = 0 and quadrature oracles") {
    const AlphaModel a0(0.0);
    auto s = lambda_boundary(a0, 0.5);
    CHECK(s.lambda_real == Approx(1 - 0.25 * std::log(3.0)).epsilon(1e-14));
    CHECK(s.im_plus == Approx(pi / 4).epsilon(1e-14));
    s = lambda_boundary(a0, 2.0);
    CHECK(s.im_plus == 0.0);
    CHECK(s.lambda_real == Approx(ref::lambda_c_2).epsilon(1e-14));
    CHECK_THROWS_AS(lambda_boundary(a0, 0.0), DomainError);

    s = lambda_boundary(AlphaModel(1.0), 0.5);
    CHECK(s.lambda_real == Approx(ref::re_a1_half).epsilon(1e-10));
    CHECK(s.im_plus == Approx(ref::im_a1_half).epsilon(1e-10));
    s = lambda_boundary(AlphaModel(2.0), 3.0);
    CHECK(s.lambda_real == Approx(ref::re_a2_three).epsilon(1e-9));
    CHECK(s.im_plus == Approx(ref::im_a2_three).epsilon(1e-9));

    s = lambda_boundary(AlphaModel(1.0), 1e-7);
    CHECK(s.lambda_real == Approx(1.0).epsilon(1e-5));
    CHECK(s.im_plus < 1e-6);

    // Boundary value agrees with the off-axis function.
    const AlphaModel a1(1.0);
    const cplx off = lambda_general(a1, cplx(0.5, 1e-7));
    s = lambda_boundary(a1, 0.5);
    CHECK(std::abs(off - cplx(s.lambda_real, s.im_plus)) <= 1e-5);
}

TEST_CASE("theta table: branch, support edge, positivity of |λ⁺|²") {
    const auto t0 = build_theta_table(exact_source(AlphaModel(0.0)));
    CHECK(t0.bounded());
    CHECK(t0.samples.front().theta < 1e-3);
    for (std::size_t i = 1; i < t0.samples.size(); ++i) CHECK(t0.samples[i].mu > t0.samples[i - 1].mu);
    for (double mu : {1.0, 1.5, 10.0}) CHECK(t0.at(mu).theta == Approx(pi).epsilon(1e-15));
    CHECK(index_kappa(t0) == -1);

    for (double alpha : {0.5, 1.0, 2.0}) {
        const auto t = build_theta_table(exact_source(AlphaModel(alpha)));
        double min_mod = 1e300;
        for (const auto& s : t.samples) {
            CHECK(s.theta >= 0.0);
            CHECK(s.theta <= pi);
            min_mod = std::min(min_mod, s.lambda_real * s.lambda_real + s.im_plus * s.im_plus);
        }
        CHECK(min_mod > 0.0);
        CHECK(index_kappa(t) == -1);
        // π - θ ~ μ^{1-3/α}: Im λ⁺ ~ μ^{-1-3/α} against Re λ⁺ ~ -μ^{-2}.
        CHECK(t.tail_exponent == Approx(1.0 - 3.0 / alpha).epsilon(2e-3));
    }
}

TEST_CASE("theta table: Im λ⁺/μ is non-increasing (ξ shrinks with μ)") {
    const auto t = build_theta_table(exact_source(AlphaModel(1.0)));
    for (std::size_t i = 1; i < t.samples.size(); ++i)
        CHECK(t.samples[i].im_plus / t.samples[i].mu <= t.samples[i - 1].im_plus / t.samples[i - 1].mu * (1 + 1e-13));
}

TEST_CASE("index_kappa: degenerate table") {
    auto t = build_theta_table(exact_source(AlphaModel(0.0)));
    t.samples.resize(1);
    CHECK_THROWS_AS(index_kappa(t), ConsistencyError);
}

TEST_CASE("sample_boundary: serial and OpenMP kernels agree bit for bit") {
    const auto src = exact_source(AlphaModel(1.0));
    std::vector<double> mu;
    for (int i = 0; i < 300; ++i) mu.push_back(1e-3 * std::pow(1.05, i));
    const auto a = sample_boundary(src, mu, Execution::serial);
    const auto b = sample_boundary(src, mu, Execution::parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].lambda_real == b[i].lambda_real);
        CHECK(a[i].im_plus == b[i].im_plus);
        CHECK(a[i].theta == b[i].theta);
    }
}
