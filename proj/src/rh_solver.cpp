#include "bosejump/rh_solver.hpp"

#include <cmath>
#include <numbers>

namespace bosejump {

namespace {

constexpr double kPi = std::numbers::pi;

double tail_integral(const TailModel& t, double p) {
    return t.coef * std::pow(t.start, p + 1.0) / (-p - 1.0);
}

}  // namespace

V1Result v1_coefficient(const DispersionTable& table) {
    V1Result r;
    const auto& g = table.grid;
    const double body = g.integrate(table.deficit);
    const double body_err = std::abs(body - g.integrate_reduced(table.deficit, g.order() / 2));
    r.tail_exponent = table.tail_exponent;
    double tail_err = 0.0;
    if (!table.bounded()) {
        if (!(table.tail_exponent < -1.0))
            throw DivergenceError("V1: pi - theta decays no faster than 1/mu; the jump coefficient diverges");
        if (table.tail.engaged) {
            r.tail = tail_integral(table.tail, table.tail.exponent);
            // Sensitivity to the fitted exponent: refit one decade further in.
            const double m = table.upper();
            const double p_alt = fit_tail_exponent(table, m / 100.0, m / 10.0);
            if (std::isfinite(p_alt) && p_alt < -1.0)
                tail_err = std::abs(tail_integral(table.tail, p_alt) - r.tail);
            else
                tail_err = std::abs(r.tail);
        }
    }
    r.value = (body + r.tail) / kPi;
    r.error = (body_err + tail_err) / kPi + 4e-16 * std::abs(r.value);
    return r;
}

Factorization::Factorization(const AlphaModel& model, DispersionTable table, double k)
    : l0_(model.l0()), k_(k), table_(std::move(table)) {
    if (!std::isfinite(k)) throw ConfigError("Factorization: K must be finite");
    if (std::abs(table_.alpha - model.alpha()) > 1e-12)
        throw ConfigError("Factorization: table and model disagree on alpha");
    v1_ = v1_coefficient(table_);
    g_nodes_.resize(table_.deficit.size());
    for (std::size_t i = 0; i < g_nodes_.size(); ++i) g_nodes_[i] = -table_.deficit[i];

    const auto& nodes = table_.grid.nodes();
    vp_nodes_.resize(nodes.size());
    const auto n = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) vp_nodes_[i] = principal_at(nodes[i], g_nodes_[i]);
}

// -(1/1)∫_M^∞ c τ^p / (τ - z) dτ with τ = M/t:
//   -c M^(p+1) ∫_0^1 t^(-p-1) / (M - z t) dt.
cplx Factorization::tail_cauchy(cplx z) const {
    const TailModel& t = table_.tail;
    if (!t.engaged) return 0.0;
    const double m = t.start, p = t.exponent;
    const double scale = -t.coef * std::pow(m, p + 1.0);
    auto f = [&](double s) { return cplx(std::pow(s, -p - 1.0)) / (m - z * s); };
    return scale * integrate_adaptive<cplx>(f, 0.0, 1.0, 1e-13);
}

double Factorization::principal_at(double mu, double g_mu) const {
    const auto& grid = table_.grid;
    double body;
    if (mu < grid.upper())
        body = grid.principal_value(g_nodes_, mu, g_mu);
    else
        body = grid.cauchy(g_nodes_, cplx(mu, 0.0)).real();

    double tail = 0.0;
    const TailModel& t = table_.tail;
    if (t.engaged) {
        if (mu < t.start) {
            tail = tail_cauchy(cplx(mu, 0.0)).real();
        } else {
            // Pole inside the tail: 1/(M - μ s) = -(1/μ) / (s - M/μ).
            const double m = t.start, p = t.exponent;
            const double scale = t.coef * std::pow(m, p + 1.0) / mu;
            PvIntegrand pv{[p](double s) { return std::pow(s, -p - 1.0); }, m / mu, 0.0, 1.0};
            tail = scale * pv_integral(pv, 1e-13);
        }
    }
    return (body + tail) / kPi;
}

cplx Factorization::v_transform(cplx z) const {
    if (z.imag() == 0.0 && z.real() >= 0.0)
        throw DomainError("V(z): z lies on the cut; use v_boundary");
    const auto& grid = table_.grid;
    std::optional<double> f_re;
    if (z.real() > grid.lower() && z.real() < grid.upper()) f_re = -table_.deficit_at(z.real());
    return (grid.cauchy(g_nodes_, z, f_re) + tail_cauchy(z)) / kPi;
}

double Factorization::v_principal(double mu) const {
    if (!(mu > 0.0)) throw DomainError("Vp: mu must be positive");
    if (table_.bounded() && mu == table_.source->support_end)
        throw RangeError("Vp: logarithmically divergent at the end of the support");
    return principal_at(mu, -table_.deficit_at(mu));
}

cplx Factorization::v_boundary(double mu, Side side) const {
    const double im = -table_.deficit_at(mu);
    return {v_principal(mu), side == Side::above ? im : -im};
}

cplx Factorization::x_factor(cplx z) const { return std::exp(v_transform(z)) / z; }

cplx Factorization::x_boundary(double mu, Side side) const { return std::exp(v_boundary(mu, side)) / mu; }

SpectrumCoefficient Factorization::n_coefficient(double eta) const {
    // sin θ = 0 on and beyond the end of a bounded support; the limit of n there
    // is 0 even though Vp itself diverges (only like log log) at the end point.
    if (table_.bounded() && eta >= table_.source->support_end) return {eta, 0.0};
    const double d = table_.deficit_at(eta);
    if (d == 0.0) return {eta, 0.0};
    const double vp = v_principal(eta);
    return {eta, -(2.0 * l0_ * k_ / kPi) * std::exp(-vp) * std::sin(d)};
}

}  // namespace bosejump
