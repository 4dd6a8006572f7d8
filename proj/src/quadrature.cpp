#include "surface_modes/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "surface_modes/errors.hpp"

namespace surface_modes {

namespace {

GaussRule build_rule() {
  GaussRule rule{};
  constexpr int n = kGaussOrder;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double composite(const std::function<double(double)>& f, double a, double b, int panels) {
  const GaussRule& rule = gauss_legendre_16();
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double centre = a + (p + 0.5) * h;
    double panel = 0.0;
    for (int i = 0; i < kGaussOrder; ++i) panel += rule.weights[i] * f(centre + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * panel;
  }
  return total;
}

}  // namespace

const GaussRule& gauss_legendre_16() {
  static const GaussRule rule = build_rule();
  return rule;
}

QuadratureResult integrate_radial_detailed(const std::function<double(double)>& f, double a, double b,
                                           double oscillation_scale, const QuadratureOptions& options) {
  if (!(a <= b)) throw DomainError("integrate_radial: requires a <= b");
  if (!(oscillation_scale > 0.0)) throw DomainError("integrate_radial: oscillation scale must be positive");
  if (a == b) return {};

  const double length = b - a;
  const double max_width = std::min(length / 4.0, std::numbers::pi / (2.0 * oscillation_scale));
  int panels = std::max(4, static_cast<int>(std::ceil(length / max_width - 1e-9)));

  double coarse = composite(f, a, b, panels);
  double fine = composite(f, a, b, 2 * panels);
  auto change = [&] { return fine == 0.0 ? std::abs(coarse) : std::abs(fine - coarse) / std::abs(fine); };
  for (int r = 0; r < options.max_refinements && change() > options.target_relative; ++r) {
    panels *= 2;
    coarse = fine;
    fine = composite(f, a, b, 2 * panels);
  }
  const double rel = change();
  if (!(rel <= options.failure_relative)) {
    throw NumericalError("integrate_radial: panel refinement disagreement " + std::to_string(rel));
  }
  return {fine, rel, 2 * panels};
}

double integrate_radial(const std::function<double(double)>& f, double a, double b, double oscillation_scale,
                        const QuadratureOptions& options) {
  return integrate_radial_detailed(f, a, b, oscillation_scale, options).value;
}

}  // namespace surface_modes
