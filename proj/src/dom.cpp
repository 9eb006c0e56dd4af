#include "bosejump/dom.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bosejump {

void einstein_gauss_rule(double q, double b, int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1 || !(b > 0.0) || !(q > 1.0)) throw ConfigError("einstein_gauss_rule: invalid arguments");
    // Discretise the measure with a fine composite rule, graded towards 0.
    std::vector<double> br{0.0};
    for (int k = 30; k >= 1; --k) br.push_back(std::ldexp(std::min(b, 1.0), -k));
    for (double t = 1.0; t < b; t += 1.0) br.push_back(t);
    br.push_back(b);
    const QuadratureRule& rule = cached_gauss_rule(24);
    std::vector<double> t, w;
    for (std::size_t p = 0; p + 1 < br.size(); ++p) {
        if (!(br[p + 1] > br[p])) continue;
        const double half = 0.5 * (br[p + 1] - br[p]), mid = 0.5 * (br[p + 1] + br[p]);
        for (int i = 0; i < rule.order(); ++i) {
            const double x = mid + half * rule.nodes[i];
            t.push_back(x);
            w.push_back(half * rule.weights[i] * std::pow(x, q) * einstein(x));
        }
    }
    const std::size_t m = t.size();
    if (static_cast<std::size_t>(n) * 4 > m) throw ConfigError("einstein_gauss_rule: too many nodes requested");

    // Stieltjes procedure on the discrete measure (Lanczos form with full
    // reorthogonalisation), giving the Jacobi matrix of the weight.
    const double beta0 = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<std::vector<double>> basis;
    std::vector<double> p(m, 1.0 / std::sqrt(beta0));
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) {
        double a = 0.0;
        for (std::size_t j = 0; j < m; ++j) a += w[j] * t[j] * p[j] * p[j];
        diag[k] = a;
        basis.push_back(p);
        if (k + 1 == n) break;
        std::vector<double> r(m);
        for (std::size_t j = 0; j < m; ++j) r[j] = (t[j] - a) * p[j];
        if (k > 0)
            for (std::size_t j = 0; j < m; ++j) r[j] -= sub[k - 1] * basis[k - 1][j];
        for (const auto& prev : basis) {
            double dot = 0.0;
            for (std::size_t j = 0; j < m; ++j) dot += w[j] * r[j] * prev[j];
            for (std::size_t j = 0; j < m; ++j) r[j] -= dot * prev[j];
        }
        double norm = 0.0;
        for (std::size_t j = 0; j < m; ++j) norm += w[j] * r[j] * r[j];
        norm = std::sqrt(norm);
        sub[k] = norm;
        for (std::size_t j = 0; j < m; ++j) p[j] = r[j] / norm;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    if (n == 1) {
        nodes = {diag[0]};
        weights = {beta0};
        return;
    }
    Eigen::VectorXd off = sub.head(n - 1);
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw SolverError("einstein_gauss_rule: eigenvalue solver failed");
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = es.eigenvalues()[i];
        const double v0 = es.eigenvectors()(0, i);
        weights[i] = beta0 * v0 * v0;
    }
}

namespace {

std::vector<double> geometric_edges(double length, int cells, double first) {
    std::vector<double> x(cells + 1);
    if (first * cells >= length) {
        for (int i = 0; i <= cells; ++i) x[i] = length * i / cells;
        return x;
    }
    // first (r^N - 1)/(r - 1) = L, solved for r > 1 by bisection.
    auto total = [&](double r) { return first * std::expm1(cells * std::log(r)) / (r - 1.0); };
    double lo = 1.0 + 1e-14, hi = 2.0;
    while (total(hi) < length) hi = 1.0 + 2.0 * (hi - 1.0);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (total(mid) < length ? lo : hi) = mid;
    }
    const double r = 0.5 * (lo + hi);
    double h = first;
    x[0] = 0.0;
    for (int i = 1; i <= cells; ++i, h *= r) x[i] = x[i - 1] + h;
    x[cells] = length;  // absorb rounding in the last cell
    return x;
}

}  // namespace

DomGrid DomGrid::make(const AlphaModel& model, const DomGridSpec& spec) {
    if (!(spec.length > 0.0) || spec.cells < 2 || !(spec.first_cell > 0.0))
        throw ConfigError("DomGrid: spatial grid needs length > 0, >= 2 cells and a positive first cell");
    if (spec.angular < 2 || spec.angular % 2 != 0) throw ConfigError("DomGrid: angular count must be even and >= 2");
    if (spec.frequency < 1 || !(spec.omega_max > 0.0)) throw ConfigError("DomGrid: invalid frequency rule");
    if (!(spec.fit_lo >= 0.0 && spec.fit_lo < spec.fit_hi && spec.fit_hi <= 1.0))
        throw ConfigError("DomGrid: fit window must satisfy 0 <= lo < hi <= 1");

    DomGrid g;
    g.length = spec.length;
    g.fit_lo = spec.fit_lo * spec.length;
    g.fit_hi = spec.fit_hi * spec.length;
    g.x = geometric_edges(spec.length, spec.cells, spec.first_cell);

    if (spec.angular_set == AngularSet::gauss) {
        const QuadratureRule& r = cached_gauss_rule(spec.angular);
        g.v = r.nodes;
        g.v_weights = r.weights;
    } else {
        // Gauss on each half-range: resolves the discontinuity of φ at v = 0 on the wall.
        const QuadratureRule& r = cached_gauss_rule(spec.angular / 2);
        const int h = spec.angular / 2;
        g.v.resize(spec.angular);
        g.v_weights.resize(spec.angular);
        for (int i = 0; i < h; ++i) {
            const double t = 0.5 * (1.0 + r.nodes[i]), w = 0.5 * r.weights[i];
            g.v[h + i] = t;
            g.v_weights[h + i] = w;
            g.v[h - 1 - i] = -t;
            g.v_weights[h - 1 - i] = w;
        }
    }
    einstein_gauss_rule(model.alpha() + 4.0, spec.omega_max, spec.frequency, g.omega, g.omega_weights);
    g.validate(model);
    return g;
}

std::vector<std::string> DomGrid::validate(const AlphaModel& model) const {
    if (x.size() < 3 || x.front() != 0.0) throw ConfigError("DomGrid: malformed spatial grid");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw ConfigError("DomGrid: spatial nodes must increase");
    if (v.size() != v_weights.size() || omega.size() != omega_weights.size() || v.empty() || omega.empty())
        throw ConfigError("DomGrid: rule sizes disagree");
    double sv = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v_weights[i] > 0.0)) throw ConfigError("DomGrid: angular weights must be positive");
        if (std::abs(v[i] + v[v.size() - 1 - i]) > 1e-14) throw ConfigError("DomGrid: angular set not symmetric");
        sv += v_weights[i];
    }
    if (std::abs(sv - 2.0) > 1e-12) throw ConfigError("DomGrid: angular weights must sum to 2");
    for (std::size_t i = 0; i < omega.size(); ++i)
        if (!(omega_weights[i] > 0.0) || !(omega[i] > 0.0)) throw ConfigError("DomGrid: frequency rule invalid");

    std::vector<std::string> warn;
    const double sigma_min = std::pow(omega.front(), model.alpha());
    const double thin = std::exp(-length * sigma_min);
    if (thin >= 1e-6) {
        std::ostringstream os;
        os << "slab optically thin for the lowest frequency node: exp(-L sigma_min) = " << thin;
        warn.push_back(os.str());
    }
    return warn;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw ExtractionError("fit_line: need at least two points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx, sxy += dx * dy, syy += dy * dy;
    }
    if (sxx == 0.0) throw ExtractionError("fit_line: abscissae coincide");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        ssr += r * r;
    }
    f.r_squared = syy > 0.0 ? 1.0 - ssr / syy : (ssr == 0.0 ? 1.0 : 0.0);
    return f;
}

LinearFit extract_k0(std::span<const double> x, std::span<const double> source, double lo, double hi, double k) {
    if (!(lo < hi) || x.size() != source.size()) throw ConfigError("extract_k0: need lo < hi and matching arrays");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] >= lo && x[i] <= hi) {
            xs.push_back(x[i]);
            ys.push_back(source[i]);
        }
    const LinearFit f = fit_line(xs, ys);
    if (std::abs(f.slope - k) > 0.01 * std::abs(k) + 1e-14) {
        std::ostringstream os;
        os << "extract_k0: fitted slope " << f.slope << " misses K = " << k
           << " by more than 1%; the fit window reaches into the boundary layer or the slab is too short";
        throw ExtractionError(os.str());
    }
    if (f.r_squared < 0.9999) throw ExtractionError("extract_k0: source is not linear over the fit window");
    return f;
}

namespace {

// Affine map u -> G(u) on u = (S(x_0..x_N), K0): one sweep, the scalar flux,
// and the intercept of its fit over the window.
class SourceMap {
  public:
    SourceMap(const SweepOperator& op, const DomGrid& g, Execution exec)
        : op_(op), g_(g), exec_(exec), phi_(g.channels() * g.nodes()) {
        for (std::size_t i = 0; i < g.nodes(); ++i)
            if (g.x[i] >= g.fit_lo && g.x[i] <= g.fit_hi) window_.push_back(i);
        if (window_.size() < 2) throw ConfigError("solve_dom: fit window holds fewer than two nodes");
        double mx = 0.0;
        for (auto i : window_) mx += g.x[i];
        mx /= window_.size();
        double sxx = 0.0;
        for (auto i : window_) sxx += (g.x[i] - mx) * (g.x[i] - mx);
        // intercept = Σ c_i S_i with c_i = 1/n - mx (x_i - mx)/sxx
        for (auto i : window_) icoef_.push_back(1.0 / window_.size() - mx * (g.x[i] - mx) / sxx);
    }

    std::size_t size() const { return g_.nodes() + 1; }

    void apply(const Eigen::VectorXd& u, double k, Eigen::VectorXd& out) {
        const std::size_t n = g_.nodes();
        std::span<const double> s(u.data(), n);
        op_.sweep(s, u[n], k, phi_, exec_);
        out.resize(size());
        op_.moment(phi_, std::span<double>(out.data(), n), exec_);
        out[n] = intercept(out);
        ++count_;
    }

    double intercept(const Eigen::VectorXd& s) const {
        double a = 0.0;
        for (std::size_t j = 0; j < window_.size(); ++j) a += icoef_[j] * s[window_[j]];
        return a;
    }

    int count() const { return count_; }
    const std::vector<double>& phi() const { return phi_; }

  private:
    const SweepOperator& op_;
    const DomGrid& g_;
    Execution exec_;
    std::vector<double> phi_;
    std::vector<std::size_t> window_;
    std::vector<double> icoef_;
    int count_ = 0;
};

}  // namespace

DomResult solve_dom(const AlphaModel& model, const DomGrid& grid, const DomOptions& opts) {
    if (!std::isfinite(opts.k)) throw ConfigError("solve_dom: K must be finite");
    if (!(opts.tol > 0.0) || opts.max_iter < 1 || opts.restart < 1)
        throw ConfigError("solve_dom: tolerance, iteration cap and restart must be positive");
    DomResult res;
    res.warnings = grid.validate(model);
    const SweepOperator op(model, grid);
    SourceMap map(op, grid, opts.exec);
    const std::size_t n = map.size();

    // u = L u + b, with b = G(0) (the driving gradient) and L the K = 0 map.
    Eigen::VectorXd b, u = Eigen::VectorXd::Zero(n), gu, r;
    map.apply(u, opts.k, b);
    auto residual_of = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
        Eigen::VectorXd lx;
        map.apply(x, 0.0, lx);
        out = b - (x - lx);
    };

    r = b;
    double rnorm = r.norm();
    const int m = opts.restart;
    while (rnorm > opts.tol) {
        // Restarted GMRES on (I - L) u = b, modified Gram–Schmidt + Givens.
        Eigen::MatrixXd v(n, m + 1), h = Eigen::MatrixXd::Zero(m + 1, m);
        Eigen::VectorXd cs(m), sn(m), e = Eigen::VectorXd::Zero(m + 1);
        v.col(0) = r / rnorm;
        e[0] = rnorm;
        int j = 0;
        for (; j < m && map.count() < opts.max_iter; ++j) {
            Eigen::VectorXd w;
            map.apply(v.col(j), 0.0, w);
            w = v.col(j) - w;
            for (int i = 0; i <= j; ++i) {
                h(i, j) = w.dot(v.col(i));
                w -= h(i, j) * v.col(i);
            }
            h(j + 1, j) = w.norm();
            if (h(j + 1, j) > 0.0) v.col(j + 1) = w / h(j + 1, j);
            for (int i = 0; i < j; ++i) {
                const double t = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
                h(i + 1, j) = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
                h(i, j) = t;
            }
            const double d = std::hypot(h(j, j), h(j + 1, j));
            cs[j] = h(j, j) / d;
            sn[j] = h(j + 1, j) / d;
            h(j, j) = d;
            h(j + 1, j) = 0.0;
            e[j + 1] = -sn[j] * e[j];
            e[j] = cs[j] * e[j];
            if (std::abs(e[j + 1]) <= 0.1 * opts.tol || h(j, j) == 0.0) {
                ++j;
                break;
            }
        }
        if (j > 0) {
            Eigen::VectorXd y = h.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(e.head(j));
            u += v.leftCols(j) * y;
        }
        if (map.count() >= opts.max_iter) {
            residual_of(u, r);
            rnorm = r.norm();
            if (rnorm <= opts.tol) break;
            throw ConvergenceError("solve_dom: budget of " + std::to_string(opts.max_iter) +
                                       " sweeps exhausted; increase max_iter or check the grid",
                                   map.count(), rnorm);
        }
        residual_of(u, r);
        rnorm = r.norm();
    }

    // Final sweep with the driving gradient reproduces φ and S for reporting.
    map.apply(u, opts.k, gu);
    const std::size_t nodes = grid.nodes();
    res.phi = map.phi();
    res.source.assign(u.data(), u.data() + nodes);
    res.residual = (gu.head(nodes) - u.head(nodes)).cwiseAbs().maxCoeff();
    res.iterations = map.count();
    if (res.residual > opts.tol)
        throw ConvergenceError("solve_dom: fixed point not reached to tolerance", res.iterations, res.residual);

    const LinearFit fit = extract_k0(grid.x, res.source, grid.fit_lo, grid.fit_hi, opts.k);
    res.k0_extracted = fit.intercept;
    res.slope = fit.slope;
    res.r_squared = fit.r_squared;
    res.fit_lo = grid.fit_lo;
    res.fit_hi = grid.fit_hi;
    return res;
}

}  // namespace bosejump
