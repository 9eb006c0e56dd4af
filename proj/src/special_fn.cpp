#include "bosejump/special_fn.hpp"

#include <cmath>
#include <limits>

namespace bosejump {

double einstein(double x) {
    if (x == 0.0) throw DomainError("einstein: pole at x = 0");
    const double ax = std::abs(x);
    if (ax <= 40.0) {
        const double s = std::sinh(0.5 * ax);
        return 1.0 / (4.0 * s * s);
    }
    const double e = std::exp(-ax);
    const double d = -std::expm1(-ax);
    return e / (d * d);
}

namespace {

// ω² E(ω) = ((ω/2) / sinh(ω/2))², analytic and equal to 1 at the origin.
double planck_regular(double w) {
    if (w < 1e-8) return 1.0 - w * w / 12.0;
    if (w > 40.0) return w * w * einstein(w);
    const double h = 0.5 * w;
    const double r = h / std::sinh(h);
    return r * r;
}

// ∫_0^d ω^(q-2) ω²E(ω) dω for tiny d from ω²E = 1 - ω²/12 + ω⁴/240 - ...
double small_moment_series(double q, double d) {
    const double dq = std::pow(d, q - 1.0);
    return dq / (q - 1.0) - dq * d * d / (12.0 * (q + 1.0)) + dq * std::pow(d, 4) / (240.0 * (q + 3.0));
}

constexpr int kGradeLevels = 40;
constexpr int kPanelOrder = 16;

}  // namespace

double einstein_moment(double q, double upper, double omega_cut) {
    if (!(q > 1.0)) throw DivergenceError("einstein_moment: ∫ ω^q E(ω) dω diverges at 0 for q <= 1");
    const double a = std::min(upper, omega_cut);
    if (!(a > 0.0)) return 0.0;

    const QuadratureRule& rule = cached_gauss_rule(kPanelOrder);
    auto integrand = [q](double w) { return std::pow(w, q - 2.0) * planck_regular(w); };
    auto panel = [&](double lo, double hi) {
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        double s = 0.0;
        for (int i = 0; i < rule.order(); ++i) s += rule.weights[i] * integrand(mid + half * rule.nodes[i]);
        return half * s;
    };

    // [0, min(a, 1)]: panels [s 2^-(k+1), s 2^-k], then the series for the rest.
    const double s = std::min(a, 1.0);
    double lower_part = 0.0;
    double hi = s;
    for (int k = 0; k < kGradeLevels; ++k) {
        const double lo = 0.5 * hi;
        lower_part += panel(lo, hi);
        hi = lo;
    }
    // Smallest terms first.
    double total = small_moment_series(q, hi) + lower_part;
    if (a > 1.0) {
        double lo = 1.0;
        while (lo < a) {
            const double next = std::min(lo + (lo < 4.0 ? lo : 4.0), a);
            total += panel(lo, next);
            lo = next;
        }
    }
    return total;
}

double moment_l0(double p, double omega_cut) {
    if (!(p > -3.0)) throw DivergenceError("moment_l0: the moment diverges for p <= -3");
    return einstein_moment(p + 4.0, std::numeric_limits<double>::infinity(), omega_cut);
}

AlphaModel::AlphaModel(double alpha, ModelConfig cfg) : alpha_(alpha), cfg_(cfg) {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha > max_alpha)
        throw ConfigError("AlphaModel: alpha must lie in [0, 3]");
    if (!(cfg_.omega_cut > 0.0)) throw ConfigError("AlphaModel: omega_cut must be positive");
    l0_alpha_ = moment_l0(alpha, cfg_.omega_cut);
    l0_2alpha_ = moment_l0(2.0 * alpha, cfg_.omega_cut);
    l0_neg_ = alpha < 3.0 ? moment_l0(-alpha, cfg_.omega_cut) : std::numeric_limits<double>::quiet_NaN();
}

double xi_alpha(const AlphaModel& model, double mu) {
    if (!(mu > 0.0)) throw DomainError("xi_alpha: mu must be positive");
    if (model.alpha() == 0.0) return mu < 1.0 ? model.l0_2alpha() : 0.0;
    const double cut = std::pow(mu, -1.0 / model.alpha());
    return einstein_moment(2.0 * model.alpha() + 4.0, cut, model.omega_cut());
}

void PhysicalScales::validate() const {
    for (double v : {T0, nu0, c, hbar_over_k})
        if (!std::isfinite(v) || v <= 0.0) throw ConfigError("PhysicalScales: all fields must be positive");
}

double PhysicalScales::length_scale(double alpha) const {
    validate();
    const double ls = (c / nu0) * std::pow(T0 / hbar_over_k, -alpha);
    if (!std::isfinite(ls) || ls <= 0.0) throw ConfigError("PhysicalScales: length scale is not finite");
    return ls;
}

double physical_jump(const PhysicalScales& scales, const AlphaModel& model, double k_phys, double v1) {
    if (!std::isfinite(k_phys) || !std::isfinite(v1)) throw DomainError("physical_jump: inputs must be finite");
    return v1 * scales.length_scale(model.alpha()) * k_phys;
}

}  // namespace bosejump
