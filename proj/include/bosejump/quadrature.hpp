#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "bosejump/errors.hpp"

namespace bosejump {

// Gauss–Legendre rule on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int order() const { return static_cast<int>(nodes.size()); }
};

struct QuadConfig {
    int base_order = 64;
    int max_depth = 30;
    int max_panels = 4000;
};

// Nodes by Newton iteration on the Legendre recurrence. 1 <= n <= 10000.
QuadratureRule gauss_rule(int n);

// Thread-safe memoised variant; the reference stays valid for the program lifetime.
const QuadratureRule& cached_gauss_rule(int n);

namespace detail {

template <class T>
double magnitude(const T& v) {
    return std::abs(v);
}

template <class T, class F>
T fixed_gauss(F& f, double a, double b, const QuadratureRule& rule) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    T sum{};
    for (int i = 0; i < rule.order(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

}  // namespace detail

// Globally adaptive panel refinement. Each panel is estimated with the base
// rule and checked against a half-order rule; the worst panel is bisected
// until the summed error estimate drops below tol * |I|. Throws AccuracyError
// (carrying the best estimate) when refinement is exhausted.
template <class T, class F>
T integrate_adaptive(F&& f, double a, double b, double tol, const QuadConfig& cfg = {}) {
    if (!(a < b)) {
        if (a == b) return T{};
        throw DomainError("integrate: require a < b");
    }
    const QuadratureRule& hi = cached_gauss_rule(cfg.base_order);
    const QuadratureRule& lo = cached_gauss_rule(std::max(1, cfg.base_order / 2));

    struct Panel {
        double a, b;
        T value;
        double err;
        int depth;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    auto make = [&](double pa, double pb, int depth) {
        T vh = detail::fixed_gauss<T>(f, pa, pb, hi);
        T vl = detail::fixed_gauss<T>(f, pa, pb, lo);
        return Panel{pa, pb, vh, detail::magnitude(vh - vl), depth};
    };

    std::priority_queue<Panel> open;
    std::vector<Panel> frozen;
    T total{};
    double err = 0.0;
    auto push = [&](Panel p) {
        total += p.value;
        err += p.err;
        open.push(std::move(p));
    };
    push(make(a, b, 0));
    int panels = 1;
    for (;;) {
        if (err <= tol * detail::magnitude(total) || err <= 1e-300) break;
        if (open.empty() || panels >= cfg.max_panels) {
            throw AccuracyError("integrate: tolerance not reached", detail::magnitude(total), err);
        }
        Panel worst = open.top();
        open.pop();
        if (worst.depth >= cfg.max_depth) {
            frozen.push_back(worst);
            continue;
        }
        total -= worst.value;
        err -= worst.err;
        const double m = 0.5 * (worst.a + worst.b);
        push(make(worst.a, m, worst.depth + 1));
        push(make(m, worst.b, worst.depth + 1));
        ++panels;
    }
    // Re-sum in a fixed order so the result does not carry running-sum drift.
    std::vector<Panel> all = std::move(frozen);
    while (!open.empty()) {
        all.push_back(open.top());
        open.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    T sum{};
    for (const auto& p : all) sum += p.value;
    return sum;
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                        const QuadConfig& cfg = {}) {
    return integrate_adaptive<double>(f, a, b, tol, cfg);
}

// Principal-value integrand f(t) / (t - pole) on (a, b).
struct PvIntegrand {
    std::function<double(double)> f;
    double pole;
    double a;
    double b;
};

// P∫ f(t)/(t-pole) dt by singularity subtraction:
//   ∫ (f(t) - f(pole)) / (t - pole) dt + f(pole) ln((b - pole) / (pole - a)).
double pv_integral(const PvIntegrand& p, double tol, const QuadConfig& cfg = {});

// Breakpoints on [a, b] refined geometrically (ratio 1/2, `levels` times)
// towards every point listed in `toward`; points outside [a, b] are ignored.
std::vector<double> graded_breaks(double a, double b, std::span<const double> toward, int levels);

}  // namespace bosejump
