#pragma once

#include "bosejump/quadrature.hpp"

namespace bosejump {

/// Einstein function E(x) = e^x / (e^x - 1)^2, the temperature derivative of
/// the Planck occupation. Throws DomainError at the pole x = 0.
double einstein(double x);

/// ∫_0^upper ω^q E(ω) dω for q > 1 (upper may be +inf). The integrand behaves
/// like ω^(q-2) at the origin, so the range is graded geometrically towards 0
/// and the last sliver is summed from the small-ω series of ω²E(ω).
double einstein_moment(double q, double upper, double omega_cut = 80.0);

/// l0(p) = ∫_0^∞ ω^(p+4) E(ω) dω. Finite only for p > -3.
double moment_l0(double p, double omega_cut = 80.0);

struct ModelConfig {
    double omega_cut = 80.0;
    QuadConfig quad{};
};

// Scattering exponent plus the frequency moments every downstream formula
// needs. Immutable; cheap to copy.
class AlphaModel {
  public:
    static constexpr double max_alpha = 3.0;

    explicit AlphaModel(double alpha, ModelConfig cfg = {});

    double alpha() const { return alpha_; }
    double l0() const { return l0_alpha_; }          // l0(α)
    double l0_neg() const { return l0_neg_; }        // l0(-α)
    double l0_2alpha() const { return l0_2alpha_; }  // l0(2α)
    double omega_cut() const { return cfg_.omega_cut; }
    const QuadConfig& quad() const { return cfg_.quad; }
    const ModelConfig& config() const { return cfg_; }

  private:
    double alpha_;
    ModelConfig cfg_;
    double l0_alpha_;
    double l0_neg_;
    double l0_2alpha_;
};

/// Truncated moment ξ_α(μ) = ∫_0^{μ^(-1/α)} ω^(2α+4) E(ω) dω: the frequencies
/// for which ω^α μ lies inside the slit (-1, 1). For α = 0 it is l0(0) when
/// μ < 1 and 0 otherwise.
double xi_alpha(const AlphaModel& model, double mu);

/// Physical inputs for converting the dimensionless jump back to kelvin.
struct PhysicalScales {
    double T0;           // K
    double nu0;          // s^-1 (rad/s)^-α
    double c;            // m/s
    double hbar_over_k;  // K s

    void validate() const;
    /// (c/ν0) (k T0 / ħ)^(-α), metres per dimensionless length unit.
    double length_scale(double alpha) const;
};

/// T1 - T0 = f K with f = V1 · length_scale.
double physical_jump(const PhysicalScales& scales, const AlphaModel& model, double k_phys, double v1);

}  // namespace bosejump
