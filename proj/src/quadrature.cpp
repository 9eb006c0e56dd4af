#include "bosejump/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <set>

namespace bosejump {

QuadratureRule gauss_rule(int n) {
    if (n < 1 || n > 10000) throw ConfigError("gauss_rule: order must lie in [1, 10000]");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // one more derivative at the converged node for the weight
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

const QuadratureRule& cached_gauss_rule(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<QuadratureRule>(gauss_rule(n))).first;
    return *it->second;
}

double pv_integral(const PvIntegrand& p, double tol, const QuadConfig& cfg) {
    if (!(p.a < p.pole && p.pole < p.b)) throw DomainError("pv_integral: pole must lie strictly inside (a, b)");
    const double fp = p.f(p.pole);
    auto quotient = [&](double t) { return t == p.pole ? 0.0 : (p.f(t) - fp) / (t - p.pole); };
    // Splitting at the pole keeps the removable singularity at a panel end,
    // where Gauss nodes never land.
    const double left = integrate_adaptive<double>(quotient, p.a, p.pole, tol, cfg);
    const double right = integrate_adaptive<double>(quotient, p.pole, p.b, tol, cfg);
    return left + right + fp * std::log((p.b - p.pole) / (p.pole - p.a));
}

std::vector<double> graded_breaks(double a, double b, std::span<const double> toward, int levels) {
    std::set<double> anchors{a, b};
    for (double t : toward)
        if (t >= a && t <= b) anchors.insert(t);
    std::set<double> graded(toward.begin(), toward.end());

    // Refine towards t while the panel width stays well above the rounding
    // of t itself; closer panels would put Gauss nodes on t.
    auto resolvable = [](double t, double w) { return w > 1e-11 * std::abs(t); };
    std::vector<double> anchor_list(anchors.begin(), anchors.end());
    std::set<double> out(anchor_list.begin(), anchor_list.end());
    for (std::size_t i = 0; i + 1 < anchor_list.size(); ++i) {
        const double lo = anchor_list[i];
        const double hi = anchor_list[i + 1];
        const bool g_lo = graded.count(lo) > 0;
        const bool g_hi = graded.count(hi) > 0;
        const double split = (g_lo && g_hi) ? 0.5 * (lo + hi) : (g_lo ? hi : lo);
        if (g_lo && g_hi) out.insert(split);
        if (g_lo) {
            double w = 0.5 * (split - lo);
            for (int k = 0; k < levels && resolvable(lo, w); ++k, w *= 0.5) out.insert(lo + w);
        }
        if (g_hi) {
            double w = 0.5 * (hi - split);
            for (int k = 0; k < levels && resolvable(hi, w); ++k, w *= 0.5) out.insert(hi - w);
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace bosejump
