#include "bosejump/dom.hpp"

#include <cmath>

namespace bosejump {

namespace {

// (τ - 1 + e^{-τ}) / τ without cancellation for small τ.
double ramp_factor(double tau) {
    if (tau < 1e-3) return tau * (0.5 - tau * (1.0 / 6.0 - tau / 24.0));
    return (tau - 1.0 + std::exp(-tau)) / tau;
}

}  // namespace

SweepOperator::SweepOperator(const AlphaModel& model, const DomGrid& grid) : grid_(&grid) {
    const std::size_t nw = grid.omega.size(), nv = grid.v.size(), cells = grid.nodes() - 1;
    if (nv % 2 != 0) throw ConfigError("SweepOperator: angular set must be symmetric with an even count");
    half_ = nv / 2;
    sigma_.resize(nw);
    for (std::size_t iw = 0; iw < nw; ++iw) sigma_[iw] = std::pow(grid.omega[iw], model.alpha());
    decay_.resize(nw * half_ * cells);
    ramp_.resize(decay_.size());
    for (std::size_t iw = 0; iw < nw; ++iw)
        for (std::size_t ih = 0; ih < half_; ++ih) {
            const double mu = grid.v[half_ + ih];  // positive half
            for (std::size_t c = 0; c < cells; ++c) {
                const double tau = sigma_[iw] * (grid.x[c + 1] - grid.x[c]) / mu;
                decay_[coef_index(iw, ih, c)] = std::exp(-tau);
                ramp_[coef_index(iw, ih, c)] = ramp_factor(tau);
            }
        }
    double wv = 0.0, ww = 0.0;
    for (double w : grid.v_weights) wv += w;
    for (double w : grid.omega_weights) ww += w;
    norm_ = wv * ww;
}

void SweepOperator::sweep_channel(std::size_t iw, std::size_t iv, std::span<const double> s, double k0, double k,
                                  double* out) const {
    const auto& g = *grid_;
    const std::size_t n = g.nodes();
    const double v = g.v[iv];
    if (v > 0.0) {
        const std::size_t ih = iv - half_;
        double phi = 0.0;
        out[0] = phi;
        for (std::size_t c = 0; c + 1 < n; ++c) {
            const double e = decay_[coef_index(iw, ih, c)], r = ramp_[coef_index(iw, ih, c)];
            phi = phi * e + s[c] * (1.0 - e) + (s[c + 1] - s[c]) * r;
            out[c + 1] = phi;
        }
    } else {
        const std::size_t ih = half_ - 1 - iv;
        double phi = k0 + k * (g.length - v / sigma_[iw]);
        out[n - 1] = phi;
        for (std::size_t c = n - 1; c-- > 0;) {
            const double e = decay_[coef_index(iw, ih, c)], r = ramp_[coef_index(iw, ih, c)];
            phi = phi * e + s[c + 1] * (1.0 - e) + (s[c] - s[c + 1]) * r;
            out[c] = phi;
        }
    }
}

void SweepOperator::sweep(std::span<const double> source, double k0, double k, std::span<double> phi,
                          Execution exec) const {
    const std::size_t n = grid_->nodes(), nv = grid_->v.size();
    const auto channels = static_cast<std::ptrdiff_t>(grid_->channels());
    if (source.size() != n || phi.size() != static_cast<std::size_t>(channels) * n)
        throw ConfigError("sweep: array sizes do not match the grid");
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ch = 0; ch < channels; ++ch)
            sweep_channel(ch / nv, ch % nv, source, k0, k, phi.data() + ch * n);
    } else {
        for (std::ptrdiff_t ch = 0; ch < channels; ++ch)
            sweep_channel(ch / nv, ch % nv, source, k0, k, phi.data() + ch * n);
    }
}

void SweepOperator::moment(std::span<const double> phi, std::span<double> source, Execution exec) const {
    const auto& g = *grid_;
    const std::size_t nw = g.omega.size(), nv = g.v.size();
    const auto n = static_cast<std::ptrdiff_t>(g.nodes());
    // Each node sums its channels in the same order whatever the thread count.
    auto node_sum = [&](std::ptrdiff_t i) {
        double total = 0.0;
        for (std::size_t iw = 0; iw < nw; ++iw) {
            double inner = 0.0;
            const double* base = phi.data() + iw * nv * n + i;
            for (std::size_t iv = 0; iv < nv; ++iv) inner += g.v_weights[iv] * base[iv * n];
            total += g.omega_weights[iw] * inner;
        }
        source[i] = total / norm_;
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) node_sum(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) node_sum(i);
    }
}

double SweepOperator::residual(std::span<const double> phi, std::span<const double> s) const {
    const auto& g = *grid_;
    const std::size_t n = g.nodes(), nv = g.v.size();
    double worst = 0.0;
    for (std::size_t ch = 0; ch < g.channels(); ++ch) {
        const std::size_t iw = ch / nv, iv = ch % nv;
        const double* p = phi.data() + ch * n;
        const bool forward = g.v[iv] > 0.0;
        const std::size_t ih = forward ? iv - half_ : half_ - 1 - iv;
        for (std::size_t c = 0; c + 1 < n; ++c) {
            const double e = decay_[coef_index(iw, ih, c)], r = ramp_[coef_index(iw, ih, c)];
            const double defect = forward ? p[c + 1] - (p[c] * e + s[c] * (1.0 - e) + (s[c + 1] - s[c]) * r)
                                          : p[c] - (p[c + 1] * e + s[c + 1] * (1.0 - e) + (s[c] - s[c + 1]) * r);
            worst = std::max(worst, std::abs(defect));
        }
    }
    return worst;
}

}  // namespace bosejump
