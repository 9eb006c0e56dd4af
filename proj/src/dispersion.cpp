#include "bosejump/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace bosejump {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kOmegaOrder = 16;

// -Σ_{k>=1} w^{-2k} / (2k+1): λ_C for |w| > 1 without the cancellation in
// 1 - w artanh(1/w).
template <class T>
T case_far(T w) {
    const T inv2 = T(1.0) / (w * w);
    T term = inv2;
    T sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        const T add = term / double(2 * k + 1);
        sum -= add;
        if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
        term *= inv2;
    }
    return sum;
}

// Breakpoints for ω integrals on [0, cut]: graded towards 0 and towards the
// log singularity where ω^α |z| = 1, plus regular panels of width <= 4.
std::vector<double> omega_breaks(double cut, double singular) {
    std::set<double> out;
    const double zero[] = {0.0};
    for (double b : graded_breaks(0.0, cut, zero, 20)) out.insert(b);
    if (singular > 0.0 && singular < cut) {
        const double s[] = {singular};
        for (double b : graded_breaks(0.0, cut, s, 40)) out.insert(b);
    }
    for (double b = 1.0; b < cut; b += (b < 4.0 ? b : 4.0)) out.insert(b);
    out.insert(cut);
    return {out.begin(), out.end()};
}

template <class T, class F>
T omega_integral(double cut, double singular, F&& f) {
    const QuadratureRule& rule = cached_gauss_rule(kOmegaOrder);
    const std::vector<double> br = omega_breaks(cut, singular);
    T sum{};
    for (std::size_t p = 0; p + 1 < br.size(); ++p) {
        const double half = 0.5 * (br[p + 1] - br[p]), mid = 0.5 * (br[p + 1] + br[p]);
        T panel{};
        for (int i = 0; i < rule.order(); ++i) panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
        sum += half * panel;
    }
    return sum;
}

}  // namespace

double lambda_case_real(double w) {
    w = std::abs(w);
    if (w < 1.0) return 1.0 - w * std::atanh(w);
    if (w == 1.0) return -std::numeric_limits<double>::infinity();
    if (w > 4.0) return case_far(w);
    return 1.0 - w * std::atanh(1.0 / w);
}

cplx lambda_case(cplx z) {
    if (z == cplx(0.0)) return 1.0;
    if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0)
        throw DomainError("lambda_case: z lies on the cut [-1, 1]; use lambda_case_boundary");
    if (std::abs(z) > 4.0) return case_far(z);
    return 1.0 + 0.5 * z * std::log((z - 1.0) / (z + 1.0));
}

cplx lambda_case_boundary(double mu, Side side) {
    if (!(std::abs(mu) < 1.0)) throw DomainError("lambda_case_boundary: |mu| must be < 1");
    const double re = 1.0 - mu * std::atanh(mu);
    const double im = 0.5 * kPi * mu;
    return {re, side == Side::above ? im : -im};
}

cplx lambda_general(const AlphaModel& model, cplx z) {
    const double a = model.alpha();
    if (z == cplx(0.0)) return 1.0;
    if (z.imag() == 0.0 && (a > 0.0 || std::abs(z.real()) <= 1.0))
        throw DomainError("lambda_general: z lies on the cut; use lambda_boundary");
    const double singular = a > 0.0 ? std::pow(std::abs(z), -1.0 / a) : 0.0;
    const cplx sum = omega_integral<cplx>(model.omega_cut(), singular, [&](double w) {
        const double weight = std::pow(w, a + 4.0) * einstein(w);
        return weight * lambda_case(std::pow(w, a) * z);
    });
    return sum / model.l0();
}

double DispersionSample::deficit() const { return std::atan2(im_plus, -lambda_real); }

DispersionSample lambda_boundary(const AlphaModel& model, double mu) {
    if (!(mu > 0.0)) throw DomainError("lambda_boundary: mu must be positive");
    DispersionSample s;
    s.mu = mu;
    const double a = model.alpha();
    if (a == 0.0) {
        // The ω average of λ_C(μ) is λ_C(μ) itself.
        s.lambda_real = lambda_case_real(mu);
    } else {
        const double singular = std::pow(mu, -1.0 / a);
        s.lambda_real = omega_integral<double>(model.omega_cut(), singular, [&](double w) {
                            return std::pow(w, a + 4.0) * einstein(w) * lambda_case_real(std::pow(w, a) * mu);
                        }) /
                        model.l0();
    }
    s.im_plus = kPi * mu * xi_alpha(model, mu) / (2.0 * model.l0());
    s.theta = std::atan2(s.im_plus, s.lambda_real);
    return s;
}

BoundarySource exact_source(const AlphaModel& model) {
    BoundarySource src;
    src.sample = [model](double mu) { return lambda_boundary(model, mu); };
    src.support_end = model.alpha() == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    src.alpha = model.alpha();
    src.label = "exact";
    return src;
}

std::vector<DispersionSample> sample_boundary(const BoundarySource& source, const std::vector<double>& mu,
                                              Execution exec) {
    std::vector<DispersionSample> out(mu.size());
    const auto n = static_cast<std::ptrdiff_t>(mu.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = source.sample(mu[i]);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = source.sample(mu[i]);
    }
    return out;
}

double fit_tail_exponent(const DispersionTable& table, double lo, double hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < table.samples.size(); ++i) {
        const double mu = table.samples[i].mu;
        const double d = table.deficit[i];
        if (mu < lo || mu > hi || !(d > 1e-300)) continue;
        const double x = std::log(mu), y = std::log(d);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
        ++n;
    }
    if (n < 3) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

std::vector<double> geometric_breaks(double lo, double hi, int per_decade) {
    std::vector<double> out;
    const int count = std::max(1, static_cast<int>(std::ceil(per_decade * std::log10(hi / lo) - 1e-9)));
    const double ratio = std::pow(hi / lo, 1.0 / count);
    double b = lo;
    for (int i = 0; i < count; ++i, b *= ratio) out.push_back(b);
    out.push_back(hi);
    return out;
}

double probe_slope(const BoundarySource& source, double lo, double hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i <= 6; ++i) {
        const double mu = lo * std::pow(hi / lo, i / 6.0);
        const double d = source.sample(mu).deficit();
        if (!(d > 1e-300)) continue;
        const double x = std::log(mu), y = std::log(d);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
        ++n;
    }
    if (n < 3) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Upper end of the table for unbounded support: the first decade boundary at
// which the local power law of π - θ has settled.
double choose_mu_max(const BoundarySource& source, const GridSpec& spec) {
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (double m = 10.0;; m *= 10.0) {
        if (m >= spec.max_mu_cap) return spec.max_mu_cap;
        const double slope = probe_slope(source, m / 10.0, m);
        if (std::isnan(slope)) return m;  // deficit underflowed: nothing left to tabulate
        if (m >= 100.0 && std::abs(slope - prev) <= 1e-3 * std::abs(slope)) return m;
        prev = slope;
    }
}

std::vector<double> table_breaks(const BoundarySource& source, const GridSpec& spec) {
    std::vector<double> br{0.0};
    if (source.bounded()) {
        const double e = source.support_end;
        for (double b : geometric_breaks(spec.mu_min * e, 0.5 * e, spec.panels_per_decade)) br.push_back(b);
        double w = 0.25 * e;
        // Stop while the gap to the end is still resolvable in double precision.
        for (int k = 1; k < spec.edge_levels && w > 256.0 * std::numeric_limits<double>::epsilon() * e; ++k, w *= 0.5) br.push_back(e - w);
        br.push_back(e);
    } else {
        const double m = spec.mu_max > 0.0 ? spec.mu_max : choose_mu_max(source, spec);
        for (double b : geometric_breaks(spec.mu_min, m, spec.panels_per_decade)) br.push_back(b);
    }
    return br;
}

}  // namespace

DispersionTable build_theta_table(const BoundarySource& source, const GridSpec& spec, Execution exec) {
    if (spec.order < 2 || spec.panels_per_decade < 1 || !(spec.mu_min > 0.0))
        throw ConfigError("build_theta_table: invalid grid specification");

    DispersionTable table;
    table.alpha = source.alpha;
    table.source = std::make_shared<const BoundarySource>(source);
    table.grid_spec = spec;

    std::vector<double> br = table_breaks(source, spec);
    for (int attempt = 0;; ++attempt) {
        table.grid = PanelGrid(br, spec.order);
        table.samples = sample_boundary(source, table.grid.nodes(), exec);

        // Continuity pass: the branch starts at θ(0⁺) = 0 and may not jump by
        // more than π/2 between neighbouring nodes.
        std::set<std::size_t> bad_panels;
        double prev = 0.0;
        for (std::size_t i = 0; i < table.samples.size(); ++i) {
            auto& s = table.samples[i];
            double d = s.theta - prev;
            d -= 2.0 * kPi * std::round(d / (2.0 * kPi));
            if (std::abs(d) > 0.5 * kPi) bad_panels.insert(i / spec.order);
            s.theta = prev + d;
            prev = s.theta;
        }
        if (bad_panels.empty()) break;
        if (attempt >= spec.max_refine)
            throw ResolutionError("build_theta_table: theta branch ambiguous after maximal refinement");
        std::vector<double> refined;
        for (std::size_t p = 0; p + 1 < br.size(); ++p) {
            refined.push_back(br[p]);
            if (bad_panels.count(p)) refined.push_back(0.5 * (br[p] + br[p + 1]));
        }
        refined.push_back(br.back());
        br = std::move(refined);
    }

    table.deficit.resize(table.samples.size());
    for (std::size_t i = 0; i < table.samples.size(); ++i) {
        const auto& s = table.samples[i];
        // Use the cancellation-free form whenever θ stayed on the principal branch.
        table.deficit[i] = (s.theta >= 0.0 && s.theta <= kPi) ? s.deficit() : kPi - s.theta;
    }

    if (!source.bounded()) {
        const double m = table.grid.upper();
        table.tail_exponent = fit_tail_exponent(table, m / 10.0, m);
        const auto& last = table.samples.back();
        const double d_last = table.deficit.back();
        if (std::isfinite(table.tail_exponent) && d_last > 0.0) {
            table.tail.engaged = true;
            table.tail.start = m;
            table.tail.exponent = table.tail_exponent;
            table.tail.coef = d_last / std::pow(last.mu, table.tail_exponent);
        }
    }
    return table;
}

DispersionSample DispersionTable::at(double mu) const { return source->sample(mu); }

double DispersionTable::deficit_at(double mu) const { return at(mu).deficit(); }

int index_kappa(const DispersionTable& table) {
    if (table.samples.size() < 2) throw ConsistencyError("index_kappa: table too small to define a winding");
    const double theta0 = table.samples.front().theta;
    double theta_inf;
    if (table.bounded()) {
        theta_inf = table.at(table.source->support_end).theta;
    } else {
        // π - θ → 0 only if the fitted tail decays.
        const double d_last = table.deficit.back();
        theta_inf = kPi - ((table.tail.engaged && table.tail.exponent < 0.0) ? 0.0 : d_last);
    }
    const double w = -(theta_inf - theta0) / kPi;
    const double k = std::round(w);
    if (std::abs(w - k) > 1e-3) throw ConsistencyError("index_kappa: winding is not an integer");
    return static_cast<int>(k);
}

}  // namespace bosejump
