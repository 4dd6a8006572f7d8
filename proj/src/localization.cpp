#include "surface_modes/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace surface_modes {

namespace {

constexpr int kPeakSamples = 256;

}  // namespace

LogScaledValue radial_moment_log(Order order, Dimension dim, double wavenumber, double tau,
                                 const QuadratureOptions& options) {
  if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("tau must lie in (0, 1]");
  if (!(wavenumber > 0.0)) throw DomainError("wavenumber must be positive");

  double peak = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= kPeakSamples; ++i) {
    const double r = tau * i / kPeakSamples;
    const LogScaledValue v = radial_basis_log(order, dim, wavenumber * r);
    if (!v.is_zero()) peak = std::max(peak, v.log_magnitude);
  }
  if (!std::isfinite(peak)) return LogScaledValue::zero();

  const int weight_power = dim == Dimension::two ? 1 : 2;
  auto integrand = [&](double r) {
    const LogScaledValue v = radial_basis_log(order, dim, wavenumber * r);
    if (v.is_zero()) return 0.0;
    return std::pow(r, weight_power) * std::exp(2.0 * (v.log_magnitude - peak));
  };
  const double integral = integrate_radial(integrand, 0.0, tau, wavenumber, options);
  if (!(integral > 0.0)) return LogScaledValue::zero();
  return LogScaledValue::from_log(1, std::log(integral) + 2.0 * peak);
}

LogScaledValue norm_sq(const EigenmodePair& pair, Field which, double tau, const QuadratureOptions& options) {
  const Medium& medium = pair.eigen.medium;
  const LogScaledValue coef = which == Field::w ? pair.alpha : pair.beta;
  LogScaledValue moment = radial_moment_log(medium.order_for(pair.eigen.mode.m), medium.dim(),
                                            field_wavenumber(pair, which), tau, options);
  moment = moment * coef.abs() * coef.abs();
  if (medium.dim() == Dimension::two) moment = moment.scaled(2.0 * std::numbers::pi);
  return moment;
}

LocalizationReport localization_report(const EigenmodePair& pair, double tau, const QuadratureOptions& options) {
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("tau must lie in (0, 1)");
  const Medium& medium = pair.eigen.medium;
  const Order order = medium.order_for(pair.eigen.mode.m);

  // Ratios use coefficient-free moments so they depend only on (order,
  // wavenumber, tau) and are exactly invariant under rescaling the pair.
  auto ratio = [&](Field which) {
    const double s = field_wavenumber(pair, which);
    const LogScaledValue inner = radial_moment_log(order, medium.dim(), s, tau, options);
    const LogScaledValue full = radial_moment_log(order, medium.dim(), s, 1.0, options);
    return std::exp(0.5 * (inner.log_magnitude - full.log_magnitude));
  };

  LocalizationReport report;
  report.tau = tau;
  report.ratio_v = ratio(Field::v);
  report.ratio_w = ratio(Field::w);
  report.norm_v_full = norm_sq(pair, Field::v, 1.0, options);
  report.norm_w_full = norm_sq(pair, Field::w, 1.0, options);
  report.mode = pair.eigen.mode;
  report.medium = medium;
  report.k = pair.eigen.k;
  return report;
}

std::vector<ProfileRow> radial_profile(const EigenmodePair& pair, int samples) {
  if (samples < 2) throw DomainError("radial_profile: need at least 2 samples");
  std::vector<LogScaledValue> w(samples), v(samples);
  double w_max = -std::numeric_limits<double>::infinity();
  double v_max = w_max;
  for (int i = 0; i < samples; ++i) {
    const double r = static_cast<double>(i) / (samples - 1);
    w[i] = eval_radial_log(pair, Field::w, r);
    v[i] = eval_radial_log(pair, Field::v, r);
    if (!w[i].is_zero()) w_max = std::max(w_max, w[i].log_magnitude);
    if (!v[i].is_zero()) v_max = std::max(v_max, v[i].log_magnitude);
  }
  auto normalized = [](LogScaledValue x, double top) {
    return x.is_zero() ? 0.0 : std::exp(x.log_magnitude - top);
  };
  std::vector<ProfileRow> rows(samples);
  for (int i = 0; i < samples; ++i) {
    rows[i] = {static_cast<double>(i) / (samples - 1), normalized(w[i], w_max), normalized(v[i], v_max)};
  }
  return rows;
}

}  // namespace surface_modes
