#include "bosejump/panel_grid.hpp"

#include <algorithm>
#include <cmath>

#include "bosejump/errors.hpp"
#include "bosejump/quadrature.hpp"

namespace bosejump {

PanelGrid::PanelGrid(std::vector<double> breaks, int order) : breaks_(std::move(breaks)), order_(order) {
    if (breaks_.size() < 2) throw ConfigError("PanelGrid: need at least one panel");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
        if (!(breaks_[i] > breaks_[i - 1])) throw ConfigError("PanelGrid: breaks must increase strictly");
    const QuadratureRule& rule = cached_gauss_rule(order);
    ref_nodes_ = rule.nodes;
    bary_.assign(order, 1.0);
    for (int j = 0; j < order; ++j) {
        for (int k = 0; k < order; ++k)
            if (k != j) bary_[j] *= (ref_nodes_[j] - ref_nodes_[k]);
        bary_[j] = 1.0 / bary_[j];
    }
    const double scale = *std::max_element(bary_.begin(), bary_.end(),
                                           [](double a, double b) { return std::abs(a) < std::abs(b); });
    for (double& b : bary_) b /= std::abs(scale);

    nodes_.reserve(panels() * order);
    weights_.reserve(panels() * order);
    for (std::size_t p = 0; p < panels(); ++p) {
        const double a = breaks_[p], b = breaks_[p + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int i = 0; i < order; ++i) {
            nodes_.push_back(mid + half * rule.nodes[i]);
            weights_.push_back(half * rule.weights[i]);
        }
    }
}

std::size_t PanelGrid::panel_of(double x) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    std::size_t idx = (it == breaks_.begin()) ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return std::min(idx, panels() - 1);
}

double PanelGrid::integrate(std::span<const double> values) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * values[i];
    return sum;
}

double PanelGrid::lagrange(std::span<const double> f, double t, double* dt) const {
    // Points within rounding of a node are treated as the node; the generic
    // derivative formula loses all digits there. Mapping a physical node back
    // to [-1, 1] on a narrow panel far from 0 costs several digits, hence the
    // loose threshold.
    for (int j = 0; j < order_; ++j) {
        if (std::abs(t - ref_nodes_[j]) <= 1e-11) {
            if (dt) *dt = node_slope(f, j);
            return f[j];
        }
    }
    double num = 0.0, den = 0.0;
    for (int j = 0; j < order_; ++j) {
        const double c = bary_[j] / (t - ref_nodes_[j]);
        num += c * f[j];
        den += c;
    }
    const double p = num / den;
    if (dt) {
        double d = 0.0;
        for (int j = 0; j < order_; ++j) {
            const double r = t - ref_nodes_[j];
            d += bary_[j] * (p - f[j]) / (r * r);
        }
        *dt = d / den;
    }
    return p;
}

double PanelGrid::node_slope(std::span<const double> f, int j) const {
    double d = 0.0;
    for (int k = 0; k < order_; ++k)
        if (k != j) d += (bary_[k] / bary_[j]) * (f[k] - f[j]) / (ref_nodes_[j] - ref_nodes_[k]);
    return d;
}

double PanelGrid::interpolate(std::span<const double> values, double x) const {
    const std::size_t p = panel_of(x);
    const double a = breaks_[p], b = breaks_[p + 1];
    return lagrange(values.subspan(p * order_, order_), (2.0 * x - a - b) / (b - a), nullptr);
}

double PanelGrid::derivative(std::span<const double> values, double x) const {
    const std::size_t p = panel_of(x);
    const double a = breaks_[p], b = breaks_[p + 1];
    double dt = 0.0;
    lagrange(values.subspan(p * order_, order_), (2.0 * x - a - b) / (b - a), &dt);
    return dt * 2.0 / (b - a);
}

double PanelGrid::integrate_reduced(std::span<const double> values, int reduced_order) const {
    const QuadratureRule& rule = cached_gauss_rule(reduced_order);
    double sum = 0.0;
    for (std::size_t p = 0; p < panels(); ++p) {
        const double half = 0.5 * (breaks_[p + 1] - breaks_[p]);
        auto f = values.subspan(p * order_, order_);
        for (int i = 0; i < rule.order(); ++i) sum += half * rule.weights[i] * lagrange(f, rule.nodes[i], nullptr);
    }
    return sum;
}

double PanelGrid::principal_value(std::span<const double> values, double pole, double f_pole) const {
    const double a = lower(), b = upper();
    if (!(a < pole && pole < b)) throw DomainError("principal_value: pole must lie strictly inside the grid");
    const std::size_t pp = panel_of(pole);
    const double guard = 1e-9 * (breaks_[pp + 1] - breaks_[pp]);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const double d = nodes_[i] - pole;
        double q;
        if (std::abs(d) > guard) {
            q = (values[i] - f_pole) / d;
        } else {
            // Pole on a node: the quotient's limit is the interpolant's slope there.
            const std::size_t p = i / order_;
            q = node_slope(values.subspan(p * order_, order_), static_cast<int>(i % order_)) * 2.0 /
                (breaks_[p + 1] - breaks_[p]);
        }
        sum += weights_[i] * q;
    }
    return sum + f_pole * std::log((b - pole) / (pole - a));
}

std::complex<double> PanelGrid::near_panel(std::span<const double> f, double f0, std::complex<double> zeta) const {
    // ∫_{-1}^{1} (p(s) - f0)/(s - ζ) ds for the panel interpolant p, by local
    // bisection; Gauss on the panel nodes cannot see a pole this close.
    const QuadratureRule& lo = cached_gauss_rule(order_);
    const QuadratureRule& hi = cached_gauss_rule(2 * order_);
    double scale = std::abs(f0);
    for (double v : f) scale = std::max(scale, std::abs(v));
    const double tol = 1e-15 * std::max(scale, 1e-300);
    struct Estimate {
        std::complex<double> value;
        double magnitude;  // Σ w scale / |s - ζ|, for the rounding floor
    };
    auto rule = [&](const QuadratureRule& r, double s0, double s1) {
        const double half = 0.5 * (s1 - s0), mid = 0.5 * (s0 + s1);
        Estimate e{0.0, 0.0};
        for (int i = 0; i < r.order(); ++i) {
            const double s = mid + half * r.nodes[i];
            const double ps = lagrange(f, s, nullptr);
            // Offset from the left end: s itself rounds onto ζ deep in the bisection.
            const std::complex<double> gap = (s0 - zeta) + half * (1.0 + r.nodes[i]);
            const double wr = r.weights[i] / std::abs(gap);
            e.value += r.weights[i] * (ps - f0) / gap;
            // Rounding in p (a combination of the panel values) and in p - f0
            // scales with the panel's largest value, not with |p - f0|.
            e.magnitude += wr * scale;
        }
        e.value *= half;
        e.magnitude *= half;
        return e;
    };
    auto recurse = [&](auto&& self, double s0, double s1, int depth) -> std::complex<double> {
        const Estimate coarse = rule(lo, s0, s1), fine = rule(hi, s0, s1);
        const double diff = std::abs(fine.value - coarse.value);
        if (!std::isfinite(diff) || depth >= 48 || diff <= tol * (s1 - s0) || diff <= 64 * 2.2e-16 * fine.magnitude) return fine.value;
        const double m = 0.5 * (s0 + s1);
        return self(self, s0, m, depth + 1) + self(self, m, s1, depth + 1);
    };
    return recurse(recurse, -1.0, 1.0, 0);
}

std::complex<double> PanelGrid::cauchy(std::span<const double> values, std::complex<double> z,
                                       std::optional<double> f_at_re) const {
    const double a = lower(), b = upper();
    const bool inside = z.real() > a && z.real() < b;
    if (inside && z.imag() == 0.0) throw DomainError("cauchy: z lies on the integration interval");
    const bool subtract = inside && f_at_re;
    const double f0 = subtract ? *f_at_re : 0.0;
    std::complex<double> sum = 0.0;
    for (std::size_t p = 0; p < panels(); ++p) {
        const double pa = breaks_[p], pb = breaks_[p + 1], w = pb - pa;
        const double dx = z.real() < pa ? pa - z.real() : (z.real() > pb ? z.real() - pb : 0.0);
        if (std::hypot(dx, z.imag()) < w) {
            const std::complex<double> zeta = (2.0 * z - pa - pb) / w;
            sum += near_panel(values.subspan(p * order_, order_), f0, zeta);
            continue;
        }
        for (std::size_t i = p * order_; i < (p + 1) * order_; ++i)
            sum += weights_[i] * (values[i] - f0) / (nodes_[i] - z);
    }
    if (subtract) sum += f0 * (std::log(b - z) - std::log(a - z));
    return sum;
}

}  // namespace bosejump
