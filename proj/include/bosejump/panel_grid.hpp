#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace bosejump {

// Composite Gauss–Legendre layout: one fixed-order rule per panel. Function
// tables sampled on the nodes can be integrated, interpolated (barycentric
// Lagrange inside the containing panel) and used in Cauchy integrals.
class PanelGrid {
  public:
    PanelGrid() = default;
    PanelGrid(std::vector<double> breaks, int order);

    int order() const { return order_; }
    std::size_t panels() const { return breaks_.size() - 1; }
    std::size_t size() const { return nodes_.size(); }
    double lower() const { return breaks_.front(); }
    double upper() const { return breaks_.back(); }
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    // Panel containing x (clamped to the first/last panel).
    std::size_t panel_of(double x) const;

    double integrate(std::span<const double> values) const;
    double interpolate(std::span<const double> values, double x) const;
    double derivative(std::span<const double> values, double x) const;

    // Gauss estimate of the integral using a lower-order rule applied to the
    // panel interpolant; the gap to integrate() is a cheap error indicator.
    double integrate_reduced(std::span<const double> values, int reduced_order) const;

    // P∫ f(t)/(t - pole) dt over the grid span; f_pole = f(pole) exactly.
    double principal_value(std::span<const double> values, double pole, double f_pole) const;

    // ∫ f(t)/(t - z) dt. When f_at_re (= f(Re z)) is given and Re z lies inside
    // the grid the integrand is regularised by subtraction, which keeps the
    // result accurate for z close to the real axis.
    std::complex<double> cauchy(std::span<const double> values, std::complex<double> z,
                                std::optional<double> f_at_re = std::nullopt) const;

  private:
    std::vector<double> breaks_;
    int order_ = 0;
    std::vector<double> ref_nodes_;
    std::vector<double> bary_;
    std::vector<double> nodes_;
    std::vector<double> weights_;

    double lagrange(std::span<const double> panel_values, double t, double* dt) const;
    double node_slope(std::span<const double> panel_values, int j) const;  // d/dt at reference node j
    std::complex<double> near_panel(std::span<const double> panel_values, double f0, std::complex<double> zeta) const;
};

}  // namespace bosejump
