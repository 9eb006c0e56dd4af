#include <doctest.h>

#include <cmath>
#include <random>

#include "bosejump/dom.hpp"
#include "bosejump/rh_solver.hpp"

using namespace bosejump;
using doctest::Approx;

constexpr double v1_zero = 0.7104460895987631;  // tests/oracles/reference_values.py

TEST_CASE("einstein_gauss_rule: exact on polynomials against the weight") {
    std::vector<double> nodes, weights;
    const double q = 4.5, b = 30.0;
    einstein_gauss_rule(q, b, 12, nodes, weights);
    REQUIRE(nodes.size() == 12);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        CHECK(weights[i] > 0.0);
        CHECK(nodes[i] > 0.0);
        CHECK(nodes[i] < b);
    }
    for (int k : {0, 1, 5, 11, 20}) {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * std::pow(nodes[i], k);
        CHECK(s == Approx(einstein_moment(q + k, b)).epsilon(1e-10));
    }
}

TEST_CASE("DomGrid: rules and validation") {
    const AlphaModel m(1.0);
    const DomGrid g = DomGrid::make(m);
    double sv = 0.0;
    for (double w : g.v_weights) {
        CHECK(w > 0.0);
        sv += w;
    }
    CHECK(std::abs(sv - 2.0) <= 1e-12);
    for (double w : g.omega_weights) CHECK(w > 0.0);
    CHECK(g.x.front() == 0.0);
    CHECK(g.x.back() == Approx(30.0).epsilon(1e-14));
    // Low frequencies stream far at α > 0: the default slab is flagged, not rejected.
    const auto warn = g.validate(m);
    REQUIRE(warn.size() == 1);
    CHECK(warn[0].find("optically thin") != std::string::npos);
    CHECK(DomGrid::make(AlphaModel(0.0)).validate(AlphaModel(0.0)).empty());

    DomGridSpec thin;
    thin.length = 2.0;
    CHECK_FALSE(DomGrid::make(m, thin).validate(m).empty());
    DomGridSpec odd;
    odd.angular = 7;
    CHECK_THROWS_AS(DomGrid::make(m, odd), ConfigError);
    DomGridSpec none;
    none.cells = 0;
    CHECK_THROWS_AS(DomGrid::make(m, none), ConfigError);
}

TEST_CASE("SweepOperator: discrete modes are exact fixed points") {
    for (double alpha : {0.0, 1.0}) {
        const AlphaModel m(alpha);
        DomGridSpec spec;
        spec.cells = 120;
        spec.angular = 8;
        spec.frequency = 8;
        const DomGrid g = DomGrid::make(m, spec);
        const SweepOperator op(m, g);
        const std::size_t nodes = g.nodes(), nv = g.v.size();
        std::vector<double> phi(g.channels() * nodes), s(nodes);
        // φ = 1
        std::fill(phi.begin(), phi.end(), 1.0);
        std::fill(s.begin(), s.end(), 1.0);
        CHECK(op.residual(phi, s) <= 1e-10);
        // φ = x - v/σ with S = x
        for (std::size_t iw = 0; iw < g.omega.size(); ++iw)
            for (std::size_t iv = 0; iv < nv; ++iv)
                for (std::size_t i = 0; i < nodes; ++i)
                    phi[(iw * nv + iv) * nodes + i] = g.x[i] - g.v[iv] / op.sigma(iw);
        for (std::size_t i = 0; i < nodes; ++i) s[i] = g.x[i];
        CHECK(op.residual(phi, s) <= 1e-10);
        std::vector<double> moment(nodes);
        op.moment(phi, moment, Execution::serial);
        for (std::size_t i = 0; i < nodes; ++i) CHECK(std::abs(moment[i] - g.x[i]) <= 1e-12 * (1 + g.x[i]));
    }
}

TEST_CASE("SweepOperator: serial and OpenMP kernels agree bit for bit") {
    const AlphaModel m(0.5);
    const DomGrid g = DomGrid::make(m);
    const SweepOperator op(m, g);
    std::vector<double> s(g.nodes());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = 0.4 + g.x[i] + 0.2 * std::exp(-3 * g.x[i]);
    std::vector<double> a(g.channels() * g.nodes()), b(a.size());
    op.sweep(s, 0.4, 1.0, a, Execution::serial);
    op.sweep(s, 0.4, 1.0, b, Execution::parallel);
    CHECK(a == b);
    std::vector<double> ma(g.nodes()), mb(g.nodes());
    op.moment(a, ma, Execution::serial);
    op.moment(a, mb, Execution::parallel);
    CHECK(ma == mb);
}

TEST_CASE("fit_line / extract_k0") {
    std::vector<double> x, y;
    for (int i = 0; i <= 100; ++i) {
        x.push_back(0.3 * i);
        y.push_back(0.7 + x.back());
    }
    auto f = extract_k0(x, y, 18.0, 27.0, 1.0);
    CHECK(f.intercept == Approx(0.7).epsilon(1e-13));
    CHECK(f.slope == Approx(1.0).epsilon(1e-13));

    std::mt19937 gen(7);
    std::normal_distribution<double> noise(0.0, 1e-6);
    std::vector<double> noisy = y;
    for (double& v : noisy) v += noise(gen);
    f = extract_k0(x, noisy, 18.0, 27.0, 1.0);
    CHECK(std::abs(f.intercept - 0.7) <= 1e-5);

    std::vector<double> layer;
    for (double xi : x) layer.push_back(0.7 + xi - 0.3 * std::exp(-xi));
    CHECK_THROWS_AS(extract_k0(x, layer, 0.0, 1.0, 1.0), ExtractionError);
    CHECK_THROWS_AS(extract_k0(x, y, 27.0, 18.0, 1.0), ConfigError);
}

TEST_CASE("solve_dom: trivial problem and iteration budget") {
    const AlphaModel m(0.0);
    const DomGrid g = DomGrid::make(m);
    DomOptions zero;
    zero.k = 0.0;
    const DomResult r = solve_dom(m, g, zero);
    CHECK(r.k0_extracted == 0.0);
    for (double v : r.phi) CHECK(v == 0.0);

    DomOptions one;
    one.max_iter = 1;
    CHECK_THROWS_AS(solve_dom(m, g, one), ConvergenceError);
    DomOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(solve_dom(m, g, bad), ConfigError);
}

TEST_CASE("solve_dom: α = 0 intercept, angular convergence") {
    const AlphaModel m(0.0);
    const DomResult r = solve_dom(m, DomGrid::make(m));
    CHECK(std::abs(r.k0_extracted - v1_zero) <= 0.02 * v1_zero);
    CHECK(r.residual <= 1e-10);
    CHECK(r.r_squared >= 0.9999);
    CHECK(r.slope == Approx(1.0).epsilon(0.01));

    DomGridSpec spec;
    spec.frequency = 8;  // irrelevant at α = 0
    double prev_err = 1e300;
    for (int n : {4, 8, 16}) {
        spec.angular = n;
        const double err = std::abs(solve_dom(m, DomGrid::make(m, spec)).k0_extracted - v1_zero);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err <= 1e-4);
}

TEST_CASE("solve_dom: linear in K") {
    const AlphaModel m(0.0);
    DomGridSpec spec;
    spec.angular = 8;
    spec.frequency = 4;
    const DomGrid g = DomGrid::make(m, spec);
    DomOptions two;
    two.k = 2.0;
    CHECK(solve_dom(m, g, two).k0_extracted == Approx(2 * solve_dom(m, g).k0_extracted).epsilon(1e-8));
}
