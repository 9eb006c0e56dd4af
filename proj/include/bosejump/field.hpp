#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "bosejump/rh_solver.hpp"

namespace bosejump {

/// The two discrete-spectrum solutions (φ₊, φ₋) = (1, x - μ).
std::pair<double, double> discrete_modes(double x, double mu);

/// Residual of the transport equation written in (x, μ) variables,
///   μ ∂φ/∂x + φ - (1/(2 l0)) ∫ ω^(α+4) E(ω) dω ∫_{-1}^{1} φ(x, ω^{-α} μ') dμ',
/// with a central difference in x and the model's Gauss rules for ω and μ'.
/// The ω weights are renormalised so the discrete collision operator
/// conserves constants exactly.
double equation_residual(const AlphaModel& model, const std::function<double(double, double)>& phi, double x,
                         double mu, double dx = 1e-3, int mu_order = 32, int omega_order = 16);

// Everything needed to evaluate the half-space solution
//   φ(x, μ) = K0 + K(x - μ) + (1/(2 l0)) ∫ e^{-x/η} η n(η)/(η - μ) dη
//             + θ₊(μ) (λ(μ)/ξ(μ)) n(μ) e^{-x/μ}.
class MilneSolution {
  public:
    MilneSolution(const AlphaModel& model, double k, const GridSpec& grid = {},
                  Execution exec = Execution::parallel);

    const AlphaModel& model() const { return model_; }
    const Factorization& factorization() const { return fact_; }
    const std::vector<SpectrumCoefficient>& n_table() const { return n_table_; }
    double k() const { return fact_.k(); }
    double k0() const { return fact_.k0(); }

    double evaluate(double x, double mu) const;

    /// Same solution with the continuum coefficient negated; used to check
    /// that the boundary residual detects a wrong sign convention.
    MilneSolution with_flipped_spectrum() const;

    /// Ordered sweep over a (x, μ) grid; rows are x-major.
    std::vector<double> evaluate_grid(std::span<const double> xs, std::span<const double> mus,
                                      Execution exec = Execution::parallel) const;

  private:
    AlphaModel model_;
    Factorization fact_;
    std::vector<SpectrumCoefficient> n_table_;
    std::vector<double> c_nodes_;  // (1/(2 l0)) η n(η) on the table nodes
    PanelGrid tail_grid_;          // t = M/η in (0, 1]
    std::vector<double> tail_g_;   // c(M/t) M/t² on tail_grid_ nodes
    double sign_ = 1.0;

    double continuum_at(double eta) const;  // (1/(2 l0)) η n(η)
    double tail_integral(double x, double mu) const;
};

/// max |φ(0, μ)| over the grid, normalised by |K| (1 + V1).
double boundary_residual(const MilneSolution& sol, std::span<const double> mu_grid);

}  // namespace bosejump
