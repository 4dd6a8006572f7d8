#include "surface_modes/eigenmodes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace surface_modes {

namespace {

constexpr double kDegenerateRatio = 1e-13;

double relative_gap(LogScaledValue a, LogScaledValue b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  const double top = std::max(a.log_magnitude, b.log_magnitude);
  const LogScaledValue diff = a - b;
  if (diff.is_zero()) return 0.0;
  return std::exp(diff.log_magnitude - top);
}

// d/dr R(s r) at r = 1, i.e. s R'(s).
LogScaledValue radial_slope_log(Order order, Dimension dim, double s) {
  const LogScaledValue jp = besselj_prime_log(order, s);
  if (dim == Dimension::two) return jp.scaled(s);
  const LogScaledValue j = besselj_log(order, s);
  const double pre = std::sqrt(std::numbers::pi / (2.0 * s));
  return (jp - j.scaled(0.5 / s)).scaled(pre * s);
}

}  // namespace

EigenmodePair EigenmodePair::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("scale factor must be positive");
  EigenmodePair out = *this;
  out.alpha = alpha.scaled(c);
  out.beta = beta.scaled(c);
  return out;
}

Normalization default_normalization(Dimension dim) {
  return dim == Dimension::two ? Normalization::beta_one : Normalization::alpha_one;
}

EigenmodePair make_pair(const TransmissionEigenvalue& eigen, std::optional<Normalization> normalization) {
  const Medium& medium = eigen.medium;
  const Order order = medium.order_for(eigen.mode.m);
  const double k = eigen.k;
  const double n = medium.contrast();

  const LogScaledValue j_inner = besselj_log(order, k);
  const LogScaledValue j_outer = besselj_log(order, k * n);
  const LogScaledValue jp_inner = besselj_prime_log(order, k);
  if (j_inner.is_zero() || (!jp_inner.is_zero() && j_inner.log_magnitude <
                                                        jp_inner.log_magnitude + std::log(kDegenerateRatio))) {
    throw DegenerateBoundary("J_nu(k) vanishes at k=" + std::to_string(k) + "; coefficient relation is singular");
  }
  if (j_outer.is_zero()) throw DegenerateBoundary("J_nu(kn) vanishes; coefficient relation is singular");

  // beta / alpha
  LogScaledValue ratio = j_outer / j_inner;
  if (medium.dim() == Dimension::three) ratio = ratio.scaled(1.0 / std::sqrt(n));

  EigenmodePair pair;
  pair.eigen = eigen;
  pair.normalization = normalization.value_or(default_normalization(medium.dim()));
  const LogScaledValue one = LogScaledValue::from_double(1.0);
  if (pair.normalization == Normalization::beta_one) {
    pair.beta = one;
    pair.alpha = one / ratio;
  } else {
    pair.alpha = one;
    pair.beta = ratio;
  }
  return pair;
}

double field_wavenumber(const EigenmodePair& pair, Field which) {
  return which == Field::w ? pair.eigen.k * pair.eigen.medium.contrast() : pair.eigen.k;
}

LogScaledValue radial_basis_log(Order order, Dimension dim, double argument) {
  if (argument < 0.0) throw DomainError("radial argument must be nonnegative");
  if (argument == 0.0) {
    const bool lowest = dim == Dimension::two ? order.twice() == 0 : order.twice() == 1;
    return lowest ? LogScaledValue::from_double(1.0) : LogScaledValue::zero();
  }
  const LogScaledValue j = besselj_log(order, argument);
  if (dim == Dimension::two) return j;
  return j.scaled(std::sqrt(std::numbers::pi / (2.0 * argument)));
}

LogScaledValue eval_radial_log(const EigenmodePair& pair, Field which, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("radius must lie in [0, 1]");
  const Medium& medium = pair.eigen.medium;
  const LogScaledValue coef = which == Field::w ? pair.alpha : pair.beta;
  return coef * radial_basis_log(medium.order_for(pair.eigen.mode.m), medium.dim(),
                                 field_wavenumber(pair, which) * r);
}

double eval_radial(const EigenmodePair& pair, Field which, double r) {
  return eval_radial_log(pair, which, r).value();
}

std::complex<double> eval_field_2d(const EigenmodePair& pair, Field which, double r, double theta) {
  if (pair.eigen.medium.dim() != Dimension::two) throw DomainError("eval_field_2d requires a 2D pair");
  const double radial = eval_radial(pair, which, r);
  return radial * std::polar(1.0, pair.eigen.mode.m * theta);
}

BoundaryResidual boundary_residual(const EigenmodePair& pair) {
  const Medium& medium = pair.eigen.medium;
  const Order order = medium.order_for(pair.eigen.mode.m);
  const double k = pair.eigen.k;
  const double kn = k * medium.contrast();

  BoundaryResidual res;
  res.value_gap = relative_gap(eval_radial_log(pair, Field::w, 1.0), eval_radial_log(pair, Field::v, 1.0));
  const LogScaledValue dw = pair.alpha * radial_slope_log(order, medium.dim(), kn);
  const LogScaledValue dv = pair.beta * radial_slope_log(order, medium.dim(), k);
  res.derivative_gap = relative_gap(dw, dv);
  return res;
}

}  // namespace surface_modes
