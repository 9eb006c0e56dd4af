#pragma once

#include <vector>

#include "bosejump/dispersion.hpp"

namespace bosejump {

struct V1Result {
    double value = 0.0;
    double error = 0.0;
    double tail = 0.0;           // analytic tail contribution beyond the table
    double tail_exponent = 0.0;  // NaN for bounded support
};

/// V1 = (1/π) ∫_0^∞ (π - θ(μ)) dμ with the power-law tail integrated
/// analytically. Throws DivergenceError when the tail decays no faster than
/// 1/μ (α >= 3/2).
V1Result v1_coefficient(const DispersionTable& table);

struct SpectrumCoefficient {
    double eta = 0.0;
    double n_value = 0.0;
};

// Solution of the Riemann–Hilbert problem X⁺/X⁻ = λ⁺/λ⁻ on (0, ∞) with
// index -1: X(z) = exp(V(z)) / z, V(z) = (1/π) ∫ (θ(τ) - π)/(τ - z) dτ.
class Factorization {
  public:
    Factorization(const AlphaModel& model, DispersionTable table, double k);

    const DispersionTable& table() const { return table_; }
    double l0() const { return l0_; }
    double k() const { return k_; }
    double v1() const { return v1_.value; }
    const V1Result& v1_result() const { return v1_; }
    double c0() const { return -2.0 * l0_ * k_; }
    double k0() const { return v1_.value * k_; }

    /// V(z) for z off the positive real axis.
    cplx v_transform(cplx z) const;
    /// Principal value Vp(μ) on the cut.
    double v_principal(double mu) const;
    /// V^±(μ) = Vp(μ) ± i(θ(μ) - π).
    cplx v_boundary(double mu, Side side) const;

    cplx x_factor(cplx z) const;
    cplx x_boundary(double mu, Side side) const;

    /// n(η) = -(2 l0 K / π) e^{-Vp(η)} sin θ(η), the jump of C0/X across the cut.
    SpectrumCoefficient n_coefficient(double eta) const;

    /// Vp at every table node (computed once at construction).
    const std::vector<double>& v_principal_nodes() const { return vp_nodes_; }

  private:
    double l0_;
    double k_;
    DispersionTable table_;
    V1Result v1_;
    std::vector<double> g_nodes_;  // θ - π on the nodes
    std::vector<double> vp_nodes_;

    cplx tail_cauchy(cplx z) const;
    double principal_at(double mu, double g_mu) const;
};

}  // namespace bosejump
