#include "bosejump/saddle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace bosejump {

double saddle_root(double alpha, double tol) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("saddle_root: alpha must be >= 0");
    if (!(tol > 0.0)) throw ConfigError("saddle_root: tolerance must be positive");
    const double a = alpha + 4.0;
    // ω = 0 is always a root and ω = a a pole; stay clear of both.
    auto f = [a](double w) { return std::exp(w) * (a - w) - (a + w); };
    auto df = [a](double w) { return std::exp(w) * (a - w - 1.0) - 1.0; };
    const double eps = 1e-9 * a;
    double lo = eps, hi = a - eps;
    double flo = f(lo), fhi = f(hi);
    if (flo * fhi > 0.0) throw SolverError("saddle_root: no sign change in bracket");

    double w = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fw = f(w);
        if (std::abs(fw) <= tol) return w;
        if ((fw > 0.0) == (flo > 0.0)) {
            lo = w;
            flo = fw;
        } else {
            hi = w;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * w) break;
        const double newton = w - fw / df(w);
        w = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
    }
    // Bracket collapsed: accept if the residual is at the rounding floor of f.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::exp(w) * a;
    if (std::abs(f(w)) <= std::max(tol, floor)) return w;
    throw SolverError("saddle_root: tolerance not reached");
}

double saddle_root_approx(double alpha) {
    const double a = alpha + 4.0;
    if (!(a > 1.0)) throw DomainError("saddle_root_approx: alpha + 4 must exceed 1");
    return a * (1.0 - 2.0 * std::exp(-a));
}

double v1_saddle(double alpha, double v1_zero) { return std::pow(saddle_root(alpha), -alpha) * v1_zero; }

cplx lambda_surrogate(double alpha, double omega0, cplx z) {
    if (!(omega0 > 0.0)) throw DomainError("lambda_surrogate: omega0 must be positive");
    return lambda_case(std::pow(omega0, alpha) * z);
}

BoundarySource surrogate_source(double alpha, double omega0) {
    if (!(omega0 > 0.0)) throw DomainError("surrogate_source: omega0 must be positive");
    const double s = std::pow(omega0, alpha);
    BoundarySource src;
    src.sample = [s](double mu) {
        if (!(mu > 0.0)) throw DomainError("surrogate λ⁺: mu must be positive");
        const double w = s * mu;
        DispersionSample out;
        out.mu = mu;
        out.lambda_real = lambda_case_real(w);
        out.im_plus = w < 1.0 ? 0.5 * std::numbers::pi * w : 0.0;
        out.theta = std::atan2(out.im_plus, out.lambda_real);
        return out;
    };
    src.support_end = 1.0 / s;
    src.alpha = alpha;
    src.label = "saddle";
    return src;
}

SaddleSummary summarize_saddle(double alpha, double v1_zero, std::optional<double> v1_exact) {
    SaddleSummary s;
    s.alpha = alpha;
    s.omega0 = saddle_root(alpha);
    s.omega0_approx = saddle_root_approx(alpha);
    s.v1_tilde = std::pow(s.omega0, -alpha) * v1_zero;
    s.v1_exact_ref = v1_exact;
    return s;
}

}  // namespace bosejump
