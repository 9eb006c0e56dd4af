#include "bosejump/field.hpp"

#include <cmath>
#include <numbers>

namespace bosejump {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailFloor = 1e-30;  // smallest t = M/η resolved by tail panels

Factorization make_factorization(const AlphaModel& model, double k, const GridSpec& grid, Execution exec) {
    return Factorization(model, build_theta_table(exact_source(model), grid, exec), k);
}

}  // namespace

std::pair<double, double> discrete_modes(double x, double mu) { return {1.0, x - mu}; }

double equation_residual(const AlphaModel& model, const std::function<double(double, double)>& phi, double x,
                         double mu, double dx, int mu_order, int omega_order) {
    if (!(dx > 0.0) || mu_order < 1 || omega_order < 1) throw ConfigError("equation_residual: invalid rule");
    const QuadratureRule& mrule = cached_gauss_rule(mu_order);
    const QuadratureRule& wrule = cached_gauss_rule(omega_order);
    const double a = model.alpha();
    const double cut = model.omega_cut();
    const double br[] = {0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, cut};

    double weight_sum = 0.0, collision = 0.0;
    for (std::size_t p = 0; p + 1 < std::size(br); ++p) {
        const double half = 0.5 * (br[p + 1] - br[p]), mid = 0.5 * (br[p + 1] + br[p]);
        for (int i = 0; i < wrule.order(); ++i) {
            const double w = mid + half * wrule.nodes[i];
            const double ww = half * wrule.weights[i] * std::pow(w, a + 4.0) * einstein(w);
            const double scale = std::pow(w, -a);
            double inner = 0.0;
            for (int j = 0; j < mrule.order(); ++j) inner += mrule.weights[j] * phi(x, scale * mrule.nodes[j]);
            weight_sum += ww;
            collision += ww * inner;
        }
    }
    const double dphi = (phi(x + dx, mu) - phi(x - dx, mu)) / (2.0 * dx);
    return mu * dphi + phi(x, mu) - collision / (2.0 * weight_sum);
}

MilneSolution::MilneSolution(const AlphaModel& model, double k, const GridSpec& grid, Execution exec)
    : model_(model), fact_(make_factorization(model, k, grid, exec)) {
    const auto& table = fact_.table();
    const auto& nodes = table.grid.nodes();
    const auto& vp = fact_.v_principal_nodes();
    n_table_.resize(nodes.size());
    c_nodes_.resize(nodes.size());
    const double l0 = fact_.l0();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double n = -(2.0 * l0 * k / kPi) * std::exp(-vp[i]) * std::sin(table.deficit[i]);
        n_table_[i] = {nodes[i], n};
        c_nodes_[i] = nodes[i] * n / (2.0 * l0);
    }

    // Tail beyond the table in t = M/η: c(η) dη = c(M/t) M/t² dt. The integrand
    // behaves like a power of t at 0, so the panels are graded geometrically.
    if (table.tail.engaged) {
        const double m = table.upper();
        std::vector<double> br{0.0};
        for (double t = kTailFloor; t < 1.0; t *= 4.0) br.push_back(t);
        br.push_back(1.0);
        tail_grid_ = PanelGrid(std::move(br), 16);
        const auto& t = tail_grid_.nodes();
        tail_g_.resize(t.size());
        const auto n = static_cast<std::ptrdiff_t>(t.size());
        auto fill = [&](std::ptrdiff_t i) { tail_g_[i] = continuum_at(m / t[i]) * m / (t[i] * t[i]); };
        if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
            for (std::ptrdiff_t i = 0; i < n; ++i) fill(i);
        } else {
            for (std::ptrdiff_t i = 0; i < n; ++i) fill(i);
        }
    }
}

MilneSolution MilneSolution::with_flipped_spectrum() const {
    MilneSolution out = *this;
    out.sign_ = -sign_;
    for (auto& c : out.n_table_) c.n_value = -c.n_value;
    for (auto& c : out.c_nodes_) c = -c;
    for (auto& g : out.tail_g_) g = -g;
    return out;
}

double MilneSolution::continuum_at(double eta) const {
    const double d = fact_.table().deficit_at(eta);
    if (d == 0.0) return 0.0;
    return -sign_ * (fact_.k() / kPi) * eta * std::exp(-fact_.v_principal(eta)) * std::sin(d);
}

// ∫_M^∞ e^{-x/η} c(η)/(η - μ) dη over the extrapolated tail, with η = M/t.
double MilneSolution::tail_integral(double x, double mu) const {
    const auto& table = fact_.table();
    if (!table.tail.engaged) return 0.0;
    const double m = table.upper();
    const auto& t = tail_grid_.nodes();
    // h(t) = e^{-x t/M} g(t) t, and 1/(η - μ) = t/(M - μ t) = -(1/μ) h/(t - M/μ).
    std::vector<double> h(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) h[i] = std::exp(-x * t[i] / m) * tail_g_[i] * t[i];
    if (mu == 0.0) return tail_grid_.integrate(h) / m;
    const double pole = m / mu;
    if (pole > 0.0 && pole < 1.0) {
        const double h_pole = std::exp(-x / mu) * continuum_at(mu) * m / pole;
        return -tail_grid_.principal_value(h, pole, h_pole) / mu;
    }
    return -tail_grid_.cauchy(h, cplx(pole, 0.0)).real() / mu;
}

double MilneSolution::evaluate(double x, double mu) const {
    if (!(x >= 0.0)) throw DomainError("evaluate: x must be nonnegative");
    if (!std::isfinite(mu)) throw DomainError("evaluate: mu must be finite");
    const auto& table = fact_.table();
    const auto& grid = table.grid;
    const bool bounded = table.bounded();
    const double end = table.source->support_end;
    if (bounded && mu == end) throw RangeError("evaluate: mu sits on the end of the continuous spectrum");

    std::vector<double> vals(c_nodes_.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double eta = grid.nodes()[i];
        vals[i] = x > 0.0 ? c_nodes_[i] * std::exp(-x / eta) : c_nodes_[i];
    }

    double continuum;
    const bool on_cut = mu > 0.0 && (!bounded || mu < end);
    if (mu > grid.lower() && mu < grid.upper()) {
        const double f_pole = on_cut ? continuum_at(mu) * std::exp(-x / mu) : 0.0;
        continuum = grid.principal_value(vals, mu, f_pole);
    } else {
        continuum = grid.cauchy(vals, cplx(mu, 0.0)).real();
    }
    continuum += tail_integral(x, mu);

    double delta = 0.0;
    if (on_cut) {
        // (λ(μ)/ξ(μ)) n(μ) = -K μ e^{-Vp(μ)} cos θ(μ), free of the ξ → 0 division.
        const double d = table.deficit_at(mu);
        delta = sign_ * fact_.k() * mu * std::exp(-fact_.v_principal(mu)) * std::cos(d);
        if (x > 0.0) delta *= std::exp(-x / mu);
    }
    return fact_.k0() + fact_.k() * (x - mu) + continuum + delta;
}

std::vector<double> MilneSolution::evaluate_grid(std::span<const double> xs, std::span<const double> mus,
                                                 Execution exec) const {
    const std::size_t nx = xs.size(), nm = mus.size();
    std::vector<double> out(nx * nm);
    const auto n = static_cast<std::ptrdiff_t>(out.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = evaluate(xs[i / nm], mus[i % nm]);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = evaluate(xs[i / nm], mus[i % nm]);
    }
    return out;
}

double boundary_residual(const MilneSolution& sol, std::span<const double> mu_grid) {
    const double norm = std::abs(sol.k()) * (1.0 + sol.factorization().v1());
    if (norm == 0.0) return 0.0;
    double worst = 0.0;
    for (double mu : mu_grid) worst = std::max(worst, std::abs(sol.evaluate(0.0, mu)));
    return worst / norm;
}

}  // namespace bosejump
