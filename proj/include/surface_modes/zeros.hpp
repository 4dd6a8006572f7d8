#pragma once

#include "surface_modes/dimension.hpp"
#include "surface_modes/specfun.hpp"

namespace surface_modes {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains_strictly(double x) const { return lo < x && x < hi; }
  Interval scaled(double factor) const;  // factor > 0
};

enum class ZeroKind { function, derivative };

/// A refined positive zero of J_nu (kind function) or J'_nu (kind
/// derivative). The bracket certifies a sign change; residual is the
/// function (or derivative) value at the returned point.
struct BesselZero {
  Order order;
  int index = 0;
  ZeroKind kind = ZeroKind::function;
  double value = 0.0;
  Interval bracket;
  double residual = 0.0;
  int expansions = 0;  // geometric widenings of the asymptotic bracket; -1 if a sign-change walk was needed
};

/// Interval containing the s-th negative zero a_s of the Airy function,
/// from a_s = -[3pi/8 (4s-1)]^{2/3} (1 + sigma_s) and
/// 0 <= sigma_s <= 0.130 [3pi/8 (4s-1.051)]^{-2}.
Interval airy_zero_bounds(int s);

/// Bracket for j_{nu,s} from the two-sided bound
///   nu - a_s 2^{-1/3} nu^{1/3} < j_{nu,s} < nu - a_s 2^{-1/3} nu^{1/3} + (3/20) a_s^2 2^{1/3} nu^{-1/3},
/// minimized and maximized over the a_s interval. Requires nu >= 1.
Interval bessel_zero_bracket(Order order, int s);

BesselZero bessel_zero(Order order, int s);

/// s-th positive zero of J'_nu, bracketed by the interlacing
/// nu <= j'_{nu,1} < j_{nu,1} < j'_{nu,2} < j_{nu,2} < ...  Requires nu > 0.
BesselZero bessel_deriv_zero(Order order, int s);

/// Smallest m0 such that j_{nu,s0+1} / n <= nu for every m in (m0, scan_limit],
/// with nu = m (dim 2) or m + 1/2 (dim 3). Found by a direct scan from the
/// top; results are memoized behind a mutex.
int empirical_m0(double n, int s0, Dimension dim, int scan_limit = 200);

}  // namespace surface_modes
