#pragma once

#include <array>
#include <functional>

namespace surface_modes {

inline constexpr int kGaussOrder = 16;

struct GaussRule {
  std::array<double, kGaussOrder> nodes;    // on [-1, 1], ascending
  std::array<double, kGaussOrder> weights;
};

/// 16-point Gauss-Legendre rule, computed once by Newton iteration on P_16.
const GaussRule& gauss_legendre_16();

struct QuadratureOptions {
  double target_relative = 1e-10;
  double failure_relative = 1e-8;
  int max_refinements = 3;
};

struct QuadratureResult {
  double value = 0.0;
  double relative_change = 0.0;  // |fine - coarse| / |fine| at acceptance
  int panels = 0;                // panel count of the accepted value
};

/// Composite 16-point Gauss-Legendre on [a, b] with panel width at most
/// min((b-a)/4, pi / (2 * oscillation_scale)). The panel count is doubled
/// until two successive results agree to target_relative (at most
/// max_refinements times); throws NumericalError if they still differ by
/// more than failure_relative.
QuadratureResult integrate_radial_detailed(const std::function<double(double)>& f, double a, double b,
                                           double oscillation_scale, const QuadratureOptions& options = {});

double integrate_radial(const std::function<double(double)>& f, double a, double b, double oscillation_scale,
                        const QuadratureOptions& options = {});

}  // namespace surface_modes
