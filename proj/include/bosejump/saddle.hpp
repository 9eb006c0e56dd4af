#pragma once

#include <optional>

#include "bosejump/dispersion.hpp"

namespace bosejump {

/// Nontrivial root ω0 in (0, α+4) of e^ω = (α+4+ω)/(α+4-ω).
double saddle_root(double alpha, double tol = 1e-12);

/// ω̃0 = (α+4)(1 - 2 e^{-α-4}).
double saddle_root_approx(double alpha);

/// Ṽ1 = ω0^{-α} V1⁰.
double v1_saddle(double alpha, double v1_zero);

/// λ̃(z) = λ_C(ω0^α z).
cplx lambda_surrogate(double alpha, double omega0, cplx z);

/// Boundary source for λ̃; its slit ends at ω0^{-α}.
BoundarySource surrogate_source(double alpha, double omega0);

struct SaddleSummary {
    double alpha = 0.0;
    double omega0 = 0.0;
    double omega0_approx = 0.0;
    double v1_tilde = 0.0;
    std::optional<double> v1_exact_ref;
};

SaddleSummary summarize_saddle(double alpha, double v1_zero, std::optional<double> v1_exact = std::nullopt);

}  // namespace bosejump
