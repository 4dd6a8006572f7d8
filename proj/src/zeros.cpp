#include "surface_modes/zeros.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace surface_modes {

Dimension dimension_from_int(int dim) {
  if (dim == 2) return Dimension::two;
  if (dim == 3) return Dimension::three;
  throw DomainError("dimension must be 2 or 3");
}

Interval Interval::scaled(double factor) const { return {lo * factor, hi * factor}; }

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxExpansions = 10;
constexpr int kNewtonSteps = 3;
constexpr double kIndexStep = 1.0;
constexpr double kBisectionWidth = 1e-13;

// Evaluates either J_nu or J'_nu in log domain.
LogScaledValue target_value(Order order, ZeroKind kind, double x) {
  return kind == ZeroKind::function ? besselj_log(order, x) : besselj_prime_log(order, x);
}

// Newton step target/target' in log domain: J/J' for function zeros,
// J'/J'' for derivative zeros with J'' = -J'/x - (1 - nu^2/x^2) J.
double newton_step(Order order, ZeroKind kind, double x) {
  const BesselNeighbours nb = besselj_neighbours_log(order, x);
  const double nu = order.value();
  const LogScaledValue j = nb.value;
  const LogScaledValue jp = nb.lower - nb.value.scaled(nu / x);
  if (kind == ZeroKind::function) {
    if (jp.is_zero()) return 0.0;
    return (j / jp).value();
  }
  const LogScaledValue jpp = -(jp.scaled(1.0 / x)) - j.scaled(1.0 - (nu * nu) / (x * x));
  if (jpp.is_zero()) return 0.0;
  return (jp / jpp).value();
}

// Widens [lo, hi] about its centre until the endpoint signs differ.
int establish_sign_change(Order order, ZeroKind kind, Interval& bracket) {
  int expansions = 0;
  while (true) {
    const int slo = target_value(order, kind, bracket.lo).sign;
    const int shi = target_value(order, kind, bracket.hi).sign;
    if (slo * shi < 0) return expansions;
    if (slo == 0 || shi == 0) return expansions;
    if (expansions == kMaxExpansions) {
      throw NumericalError("no sign change found while bracketing a Bessel zero of order " +
                           std::to_string(order.value()));
    }
    const double c = bracket.mid();
    const double h = bracket.width();  // doubles the half-width
    bracket = {std::max(c - h, 1e-3 * c), c + h};
    ++expansions;
  }
}

BesselZero refine(Order order, int s, ZeroKind kind, Interval bracket) {
  BesselZero z;
  z.order = order;
  z.index = s;
  z.kind = kind;
  z.expansions = establish_sign_change(order, kind, bracket);
  z.bracket = bracket;

  double lo = bracket.lo;
  double hi = bracket.hi;
  int slo = target_value(order, kind, lo).sign;
  if (slo == 0) {
    hi = lo;
  } else if (target_value(order, kind, hi).sign == 0) {
    lo = hi;
  }
  while (hi - lo > kBisectionWidth * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int sm = target_value(order, kind, mid).sign;
    if (sm == 0) {
      lo = hi = mid;
      break;
    }
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  double x = 0.5 * (lo + hi);
  for (int i = 0; i < kNewtonSteps; ++i) {
    const double next = x - newton_step(order, kind, x);
    if (!(next > bracket.lo && next < bracket.hi) || !std::isfinite(next)) break;
    x = next;
  }
  z.value = x;
  z.residual = target_value(order, kind, x).value();
  return z;
}

// J_nu has no zeros in (0, nu]; for nu = 0 start just above the origin.
double zero_free_start(Order order) { return std::max(order.value(), 1e-3); }

// Sign changes of J_nu on (0, x) sampled with a step shorter than the zero
// spacing, which exceeds pi for nu >= 1/2 and 2.4 below that.
int zeros_below(Order order, double x) {
  const double end = x * (1.0 - 1e-9);
  double t = zero_free_start(order);
  if (t >= end) return 0;
  int sign = besselj_log(order, t).sign;
  int count = 0;
  while (t < end) {
    t = std::min(t + kIndexStep, end);
    const int next = besselj_log(order, t).sign;
    if (next != 0 && next != sign) {
      ++count;
      sign = next;
    }
  }
  return count;
}

}  // namespace

Interval airy_zero_bounds(int s) {
  if (s < 1) throw DomainError("airy_zero_bounds: index must be >= 1");
  const double t = 3.0 * kPi / 8.0 * (4.0 * s - 1.0);
  const double base = -std::pow(t, 2.0 / 3.0);
  const double sigma_t = 3.0 * kPi / 8.0 * (4.0 * s - 1.051);
  const double sigma_max = 0.130 / (sigma_t * sigma_t);
  return {base * (1.0 + sigma_max), base};
}

Interval bessel_zero_bracket(Order order, int s) {
  const double nu = order.value();
  if (nu < 1.0) throw DomainError("bessel_zero_bracket: order must be >= 1");
  if (s < 1) throw DomainError("bessel_zero_bracket: index must be >= 1");
  const Interval a = airy_zero_bounds(s);
  const double cbrt2 = std::cbrt(2.0);
  const double nu13 = std::cbrt(nu);
  // Both endpoint formulas decrease monotonically in a_s.
  auto lower = [&](double as) { return nu - as / cbrt2 * nu13; };
  auto upper = [&](double as) { return lower(as) + 0.15 * as * as * cbrt2 / nu13; };
  return {lower(a.hi), upper(a.lo)};
}

BesselZero bessel_zero(Order order, int s) {
  if (s < 1) throw DomainError("bessel_zero: index must be >= 1");
  const double nu = order.value();
  Interval start;
  if (nu >= 1.0) {
    start = bessel_zero_bracket(order, s);
  } else {
    // McMahon's leading term; the zeros of J_0 and J_{1/2} sit within 0.1 of it.
    const double beta = (s + 0.5 * nu - 0.25) * kPi;
    start = {beta - 0.3, beta + 0.3};
  }
  try {
    const BesselZero z = refine(order, s, ZeroKind::function, start);
    if (zeros_below(order, z.value) == s - 1) return z;
  } catch (const NumericalError&) {
  }

  // The asymptotic bracket picked up a neighbouring zero; walk the sign
  // changes from the turning point instead.
  double x = zero_free_start(order);
  int sign = besselj_log(order, x).sign;
  for (int found = 0;;) {
    const double next = x + kIndexStep;
    const int next_sign = besselj_log(order, next).sign;
    if (next_sign != sign) {
      if (++found == s) {
        BesselZero z = refine(order, s, ZeroKind::function, {x, next});
        z.expansions = -1;
        return z;
      }
      sign = next_sign;
    }
    x = next;
  }
}

BesselZero bessel_deriv_zero(Order order, int s) {
  if (s < 1) throw DomainError("bessel_deriv_zero: index must be >= 1");
  const double nu = order.value();
  if (!(nu > 0.0)) throw DomainError("bessel_deriv_zero: order must be positive");
  const double hi = bessel_zero(order, s).value;
  const double lo = s == 1 ? nu : bessel_zero(order, s - 1).value;
  return refine(order, s, ZeroKind::derivative, {lo, hi});
}

int empirical_m0(double n, int s0, Dimension dim, int scan_limit) {
  if (!(n > 1.0)) throw DomainError("empirical_m0: contrast must exceed 1");
  if (s0 < 1 || scan_limit < 1) throw DomainError("empirical_m0: invalid index or scan limit");

  using Key = std::tuple<double, int, int, int>;
  static std::mutex mutex;
  static std::map<Key, int> memo;
  const Key key{n, s0, as_int(dim), scan_limit};
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }

  int m = scan_limit;
  for (; m >= 1; --m) {
    const Order order = order_for(dim, m);
    if (bessel_zero(order, s0 + 1).value / n > order.value()) break;
  }

  std::lock_guard lock(mutex);
  memo.emplace(key, m);
  return m;
}

}  // namespace surface_modes
