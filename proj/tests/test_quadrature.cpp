#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bosejump/panel_grid.hpp"
#include "bosejump/quadrature.hpp"
#include "bosejump/special_fn.hpp"

using namespace bosejump;
using doctest::Approx;

TEST_CASE("gauss_rule: small orders in closed form") {
    const auto r1 = gauss_rule(1);
    CHECK(r1.nodes[0] == Approx(0.0));
    CHECK(r1.weights[0] == Approx(2.0));
    const auto r2 = gauss_rule(2);
    CHECK(r2.nodes[0] == Approx(-1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.nodes[1] == Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.weights[0] == Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(gauss_rule(0), ConfigError);
    CHECK_THROWS_AS(gauss_rule(10001), ConfigError);
}

TEST_CASE("gauss_rule: weights and polynomial exactness") {
    for (int n : {5, 16, 64, 200}) {
        const auto r = gauss_rule(n);
        double s = 0.0;
        for (double w : r.weights) {
            CHECK(w > 0.0);
            s += w;
        }
        CHECK(std::abs(s - 2.0) <= 1e-14);
        for (int k = 0; k <= 2 * n - 1; k += std::max(1, n / 4)) {
            double q = 0.0;
            for (int i = 0; i < n; ++i) q += r.weights[i] * std::pow(r.nodes[i], k);
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            CHECK(std::abs(q - exact) <= 1e-12);
        }
    }
    const auto r = gauss_rule(64);
    double q = 0.0;
    for (int i = 0; i < 64; ++i) q += r.weights[i] * std::pow(r.nodes[i], 126);
    CHECK(std::abs(q - 2.0 / 127) <= 1e-12);
}

TEST_CASE("integrate: smooth, Planck-weighted and endpoint-singular integrands") {
    CHECK(integrate([](double) { return 1.0; }, 0, 1, 1e-12) == Approx(1.0).epsilon(1e-15));
    const double planck = integrate([](double w) { return w * w * w * w * einstein(w); }, 1e-300, 80, 1e-13);
    CHECK(planck == Approx(4 * std::pow(std::numbers::pi, 4) / 15).epsilon(1e-10));
    CHECK(integrate([](double t) { return -std::log(t); }, 0, 1, 1e-10) == Approx(1.0).epsilon(1e-9));
    CHECK(integrate([](double) { return 1.0; }, 2, 2, 1e-12) == 0.0);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 2, 1, 1e-12), DomainError);
}

TEST_CASE("integrate: exhausted refinement reports the best estimate") {
    QuadConfig tight;
    tight.max_panels = 4;
    try {
        integrate([](double t) { return std::sin(1.0 / t); }, 1e-4, 1.0, 1e-14, tight);
        FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
        CHECK(std::isfinite(e.estimate()));
        CHECK(e.bound() > 0.0);
    }
}

TEST_CASE("pv_integral: closed forms and linearity") {
    auto one = [](double) { return 1.0; };
    CHECK(std::abs(pv_integral({one, 1.0, 0.0, 2.0}, 1e-12)) <= 1e-14);
    CHECK(pv_integral({[](double t) { return t; }, 0.0, -1.0, 1.0}, 1e-12) == Approx(2.0).epsilon(1e-13));
    CHECK(pv_integral({[](double t) { return t * t; }, 1.0, 0.0, 2.0}, 1e-12) == Approx(4.0).epsilon(1e-13));
    // P∫_0^1 dt/(t - 1/4) = ln 3
    CHECK(pv_integral({one, 0.25, 0.0, 1.0}, 1e-12) == Approx(std::log(3.0)).epsilon(1e-13));
    CHECK_THROWS_AS(pv_integral({one, 0.0, 0.0, 1.0}, 1e-12), DomainError);
    CHECK_THROWS_AS(pv_integral({one, 1.0, 0.0, 1.0}, 1e-12), DomainError);

    auto f = [](double t) { return std::exp(t); };
    auto g = [](double t) { return std::cos(3 * t); };
    const double a = 1.7, b = -0.4, pole = 0.37;
    const double lhs = pv_integral({[&](double t) { return a * f(t) + b * g(t); }, pole, 0.0, 1.0}, 1e-13);
    const double rhs = a * pv_integral({f, pole, 0.0, 1.0}, 1e-13) + b * pv_integral({g, pole, 0.0, 1.0}, 1e-13);
    CHECK(lhs == Approx(rhs).epsilon(1e-12));
}

TEST_CASE("graded_breaks: sorted, endpoints kept, geometric towards targets") {
    const double targets[] = {0.25, 7.0};
    const auto br = graded_breaks(0.0, 1.0, targets, 10);
    CHECK(br.front() == 0.0);
    CHECK(br.back() == 1.0);
    CHECK(std::is_sorted(br.begin(), br.end()));
    CHECK(std::adjacent_find(br.begin(), br.end()) == br.end());
    CHECK(std::find(br.begin(), br.end(), 0.25) != br.end());
    // Closest neighbour of the target shrinks like 2^-levels.
    double closest = 1.0;
    for (double b : br)
        if (b != 0.25) closest = std::min(closest, std::abs(b - 0.25));
    CHECK(closest < 0.25 * std::pow(0.5, 9));
}

TEST_CASE("PanelGrid: exact on polynomials, principal value matches subtraction") {
    const PanelGrid grid({0.0, 0.3, 1.0, 2.5}, 8);
    std::vector<double> f;
    for (double t : grid.nodes()) f.push_back(t * t * t - 2 * t + 0.5);
    CHECK(grid.integrate(f) == Approx(std::pow(2.5, 4) / 4 - 2.5 * 2.5 + 1.25).epsilon(1e-14));
    for (double x : {0.05, 0.3, 1.7, 2.5}) {
        CHECK(grid.interpolate(f, x) == Approx(x * x * x - 2 * x + 0.5).epsilon(1e-13));
        CHECK(grid.derivative(f, x) == Approx(3 * x * x - 2).epsilon(1e-11));
    }
    auto fn = [](double t) { return t * t * t - 2 * t + 0.5; };
    for (double pole : {0.2, 0.3, 1.234, grid.nodes()[5]}) {
        const double pv = grid.principal_value(f, pole, fn(pole));
        CHECK(pv == Approx(pv_integral({fn, pole, 0.0, 2.5}, 1e-13)).epsilon(1e-12));
    }
    const std::complex<double> z(1.1, 0.2);
    const auto c = grid.cauchy(f, z, fn(1.1));
    const auto ref = integrate_adaptive<std::complex<double>>([&](double t) { return fn(t) / (t - z); }, 0.0, 2.5,
                                                              1e-13);
    CHECK(std::abs(c - ref) <= 1e-11 * std::abs(ref));
}
