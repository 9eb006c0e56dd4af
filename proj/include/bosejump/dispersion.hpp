#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "bosejump/panel_grid.hpp"
#include "bosejump/parallel.hpp"
#include "bosejump/special_fn.hpp"

namespace bosejump {

using cplx = std::complex<double>;

enum class Side { above, below };

/// Case dispersion function λ_C(z) = 1 + (z/2) ln((z-1)/(z+1)), cut on [-1, 1].
cplx lambda_case(cplx z);

/// Real part of λ_C on the real axis (principal value inside the slit); -inf at |w| = 1.
double lambda_case_real(double w);

/// λ_C(μ) ± iπμ/2 on the slit, |μ| < 1.
cplx lambda_case_boundary(double mu, Side side);

/// λ(z) = (1/l0(α)) ∫ ω^(α+4) E(ω) λ_C(ω^α z) dω off the real axis.
cplx lambda_general(const AlphaModel& model, cplx z);

// Boundary value λ⁺(μ) on the positive axis.
struct DispersionSample {
    double mu = 0.0;
    double lambda_real = 0.0;  // principal-value real part
    double im_plus = 0.0;      // Im λ⁺(μ) >= 0
    double theta = 0.0;        // continuous argument of λ⁺, in [0, π]

    /// π - θ computed without cancellation.
    double deficit() const;
};

/// Re λ⁺(μ) and Im λ⁺(μ) = π μ ξ_α(μ) / (2 l0(α)); theta is the raw atan2.
DispersionSample lambda_boundary(const AlphaModel& model, double mu);

// Anything that supplies λ⁺ on (0, ∞): the exact model or the saddle-point
// surrogate. Beyond support_end the coefficient is real and negative (θ = π).
struct BoundarySource {
    std::function<DispersionSample(double)> sample;
    double support_end = std::numeric_limits<double>::infinity();
    double alpha = 0.0;
    std::string label;

    bool bounded() const { return std::isfinite(support_end); }
};

BoundarySource exact_source(const AlphaModel& model);

// Grid layout for θ tables. For unbounded support the upper end mu_max is
// probed decade by decade unless fixed here.
struct GridSpec {
    double mu_min = 1e-4;         // first geometric break
    double mu_max = 0.0;          // 0: choose automatically
    int panels_per_decade = 6;
    int order = 16;
    int edge_levels = 40;         // grading towards a finite support end
    int max_refine = 8;
    double max_mu_cap = 1e8;
};

// Power-law model of π - θ(μ) ≈ coef · μ^exponent for μ > start.
struct TailModel {
    bool engaged = false;
    double start = 0.0;
    double coef = 0.0;
    double exponent = 0.0;

    double deficit(double mu) const { return engaged ? coef * std::pow(mu, exponent) : 0.0; }
};

struct DispersionTable {
    double alpha = 0.0;
    std::shared_ptr<const BoundarySource> source;
    PanelGrid grid;
    std::vector<DispersionSample> samples;
    std::vector<double> deficit;  // π - θ at the nodes
    TailModel tail;
    GridSpec grid_spec;
    double tail_exponent = std::numeric_limits<double>::quiet_NaN();  // fitted on the last decade

    bool bounded() const { return source->bounded(); }
    double upper() const { return grid.upper(); }
    /// Exact θ at an arbitrary μ > 0 (evaluated through the source, not interpolated).
    DispersionSample at(double mu) const;
    double deficit_at(double mu) const;
};

DispersionTable build_theta_table(const BoundarySource& source, const GridSpec& spec = {},
                                  Execution exec = Execution::parallel);

/// Sample a source on given nodes. Exposed so the serial and OpenMP kernels
/// can be compared directly.
std::vector<DispersionSample> sample_boundary(const BoundarySource& source, const std::vector<double>& mu,
                                              Execution exec);

/// Winding index κ = -(1/π)[θ(∞) - θ(0)].
int index_kappa(const DispersionTable& table);

/// Log-log least-squares slope of π - θ over [lo, hi] using table nodes.
double fit_tail_exponent(const DispersionTable& table, double lo, double hi);

}  // namespace bosejump
