#pragma once

#include <span>
#include <string>
#include <vector>

#include "bosejump/parallel.hpp"
#include "bosejump/special_fn.hpp"

namespace bosejump {

enum class AngularSet { gauss, double_gauss };

struct DomGridSpec {
    double length = 30.0;
    int cells = 600;
    double first_cell = 1e-3;  // geometric refinement towards x = 0
    int angular = 32;
    AngularSet angular_set = AngularSet::double_gauss;
    int frequency = 48;
    double omega_max = 30.0;
    double fit_lo = 0.6;  // fit window as fractions of the slab length
    double fit_hi = 0.9;
};

// Discrete-ordinates layout for v ∂φ/∂x + ω^α φ = ω^α S(x).
struct DomGrid {
    std::vector<double> x;          // cell edges, x[0] = 0, x.back() = L
    std::vector<double> v;          // ascending, symmetric about 0
    std::vector<double> v_weights;  // sum to 2
    std::vector<double> omega;      // frequency nodes
    std::vector<double> omega_weights;  // carry ω^(α+4) E(ω)
    double length = 0.0;
    double fit_lo = 0.0;
    double fit_hi = 0.0;

    static DomGrid make(const AlphaModel& model, const DomGridSpec& spec = {});
    /// Throws ConfigError on malformed rules; returns advisory warnings
    /// (e.g. optically thin channels that still see the far end).
    std::vector<std::string> validate(const AlphaModel& model) const;
    std::size_t nodes() const { return x.size(); }
    std::size_t channels() const { return v.size() * omega.size(); }
};

/// Gauss rule for ∫_0^b ω^q E(ω) g(ω) dω by the discretised Stieltjes
/// procedure followed by Golub–Welsch.
void einstein_gauss_rule(double q, double b, int n, std::vector<double>& nodes, std::vector<double>& weights);

// Exact characteristic solution across each cell for a source that is linear
// between nodes. Precomputed once per grid.
class SweepOperator {
  public:
    SweepOperator(const AlphaModel& model, const DomGrid& grid);

    const DomGrid& grid() const { return *grid_; }
    double sigma(std::size_t iw) const { return sigma_[iw]; }

    /// One transport sweep for every (ω, v) channel. phi has channels() x nodes()
    /// entries, channel-major. Inflow is zero at x = 0 and the asymptotic mode
    /// K0 + K(L - v/ω^α) at x = L.
    void sweep(std::span<const double> source, double k0, double k, std::span<double> phi, Execution exec) const;

    /// S(x) = Σ w_ω Σ w_v φ / Σ w_ω Σ w_v, in a fixed summation order.
    void moment(std::span<const double> phi, std::span<double> source, Execution exec) const;

    /// Largest per-cell defect of the discrete transport relation for a given
    /// (φ, S). Boundary inflow values are not part of the check.
    double residual(std::span<const double> phi, std::span<const double> source) const;

  private:
    const DomGrid* grid_;
    std::vector<double> sigma_;  // ω^α per frequency
    std::vector<double> decay_;  // e^{-τ}, indexed [iw][iv_half][cell]
    std::vector<double> ramp_;   // (τ - 1 + e^{-τ}) / τ
    std::size_t half_;
    double norm_;

    std::size_t coef_index(std::size_t iw, std::size_t ih, std::size_t cell) const {
        return (iw * half_ + ih) * (grid_->nodes() - 1) + cell;
    }
    void sweep_channel(std::size_t iw, std::size_t iv, std::span<const double> source, double k0, double k,
                       double* out) const;
};

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Intercept of the least-squares line through S over [lo, hi]. Throws
/// ExtractionError when the slope misses K by more than 1% or R² < 0.9999.
LinearFit extract_k0(std::span<const double> x, std::span<const double> source, double lo, double hi, double k);

struct DomOptions {
    double k = 1.0;
    double tol = 1e-10;
    int max_iter = 400;  // transport sweeps
    int restart = 200;
    Execution exec = Execution::parallel;
};

struct DomResult {
    std::vector<double> phi;     // channel-major, see SweepOperator
    std::vector<double> source;  // S at the cell edges
    double k0_extracted = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
    double fit_lo = 0.0;
    double fit_hi = 0.0;
    int iterations = 0;
    double residual = 0.0;        // max |S_new - S| of the final sweep
    std::vector<std::string> warnings;
};

/// Source iteration for the truncated half-space. The far-end intercept K0 is
/// an extra unknown tied to the interior fit; the coupled fixed point is
/// solved with GMRES wrapped around the sweep, so every iteration is one sweep.
DomResult solve_dom(const AlphaModel& model, const DomGrid& grid, const DomOptions& opts = {});

}  // namespace bosejump
