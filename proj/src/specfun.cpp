#include "surface_modes/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace surface_modes {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnderflowLog = -700.0;

// Rescaling threshold for the downward recurrence. Magnitudes are pulled
// back by kRescale whenever they exceed kRescaleTrigger.
constexpr double kRescaleTrigger = 1e250;
constexpr double kRescale = 1e-250;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be positive and finite");
  }
}

// Closed forms for orders -1/2 and 1/2.
LogScaledValue half_order_closed_form(int twice_nu, double x) {
  const double prefactor = std::sqrt(2.0 / (kPi * x));
  return LogScaledValue::from_double(prefactor * (twice_nu < 0 ? std::cos(x) : std::sin(x)));
}

// Ascending series, well conditioned while x^2/4 <= (nu+1)/4.
LogScaledValue series_log(double nu, double x) {
  const double y = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= -y / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  const double log_prefix = nu * std::log(0.5 * x) - log_gamma(nu + 1.0);
  return LogScaledValue::from_log(sum > 0 ? 1 : (sum < 0 ? -1 : 0),
                                  log_prefix + std::log(std::abs(sum)));
}

bool use_series(double nu, double x) { return x * x <= nu + 1.0; }

int miller_start(double nu, double x) {
  const double reach = std::max(nu, x);
  const int margin = std::max(20, static_cast<int>(std::ceil(10.0 * std::cbrt(reach))));
  return static_cast<int>(std::ceil(reach)) + margin;
}

// Normalized downward recurrence returning J at orders nu - 1 and nu.
// Integer orders are normalized with 1 = J_0 + 2 sum J_{2k}; half-integer
// orders against whichever closed form J_{1/2}, J_{-1/2} is larger.
BesselNeighbours miller_log(int twice_nu, double x) {
  const double nu = 0.5 * twice_nu;
  const bool half = (twice_nu % 2) != 0;
  const double frac = half ? 0.5 : 0.0;
  const int top = miller_start(nu, x);

  // p_stored = q * exp(shift), with q the unnormalized minimal solution.
  double shift = 0.0;
  const double log_rescale = std::log(kRescale);

  double p_above = 0.0;  // order mu + 1
  double p = 1e-30;      // order mu
  double norm_sum = 0.0;

  double rec_value = 0.0, rec_value_shift = 0.0;
  double rec_lower = 0.0, rec_lower_shift = 0.0;
  double p_half = 0.0, p_minus_half = 0.0;

  // Orders run mu = top + frac down to frac (integer) or -1/2 (half).
  const int bottom = half ? -1 : 0;
  for (int i = top; i >= bottom; --i) {
    const double mu = i + frac;
    const int twice_mu = 2 * i + (half ? 1 : 0);
    if (twice_mu == twice_nu) {
      rec_value = p;
      rec_value_shift = shift;
    }
    if (twice_mu == twice_nu - 2) {
      rec_lower = p;
      rec_lower_shift = shift;
    }
    if (!half && i % 2 == 0) norm_sum += (i == 0 ? 1.0 : 2.0) * p;
    if (half && i == 0) p_half = p;
    if (half && i == -1) p_minus_half = p;
    if (i == bottom) break;

    const double p_below = (2.0 * mu / x) * p - p_above;
    p_above = p;
    p = p_below;
    if (std::abs(p) > kRescaleTrigger) {
      p *= kRescale;
      p_above *= kRescale;
      norm_sum *= kRescale;
      shift += log_rescale;
    }
  }

  // Normalization constant D such that J_mu = q_mu / D, expressed in the
  // final scale as D_stored = D * exp(shift).
  double log_norm = 0.0;
  int norm_sign = 1;
  if (!half) {
    log_norm = std::log(std::abs(norm_sum)) - shift;
    norm_sign = norm_sum > 0 ? 1 : -1;
  } else {
    const double prefactor = std::sqrt(2.0 / (kPi * x));
    const double s = prefactor * std::sin(x);
    const double c = prefactor * std::cos(x);
    // D = q / J for the better conditioned member of the pair.
    const double q = std::abs(s) >= std::abs(c) ? p_half : p_minus_half;
    const double exact = std::abs(s) >= std::abs(c) ? s : c;
    log_norm = std::log(std::abs(q)) - shift - std::log(std::abs(exact));
    norm_sign = ((q > 0) == (exact > 0)) ? 1 : -1;
  }

  auto finish = [&](double stored, double stored_shift) {
    if (stored == 0.0) return LogScaledValue::zero();
    const int sgn = (stored > 0 ? 1 : -1) * norm_sign;
    return LogScaledValue::from_log(sgn, std::log(std::abs(stored)) - stored_shift - log_norm);
  };

  BesselNeighbours out;
  out.value = finish(rec_value, rec_value_shift);
  out.lower = finish(rec_lower, rec_lower_shift);
  return out;
}

// J at twice_nu >= -1 for x > 0.
LogScaledValue j_log(int twice_nu, double x) {
  if (twice_nu == -1 || twice_nu == 1) return half_order_closed_form(twice_nu, x);
  const double nu = 0.5 * twice_nu;
  if (use_series(nu, x)) return series_log(nu, x);
  return miller_log(twice_nu, x).value;
}

}  // namespace

Order Order::integer(int m) {
  if (m < 0) throw DomainError("Bessel order must be nonnegative");
  return Order(2 * m);
}

Order Order::half_integer(int m) {
  if (m < 0) throw DomainError("Bessel order must be nonnegative");
  return Order(2 * m + 1);
}

Order Order::from_twice(int twice_nu) {
  if (twice_nu < 0) throw DomainError("Bessel order must be nonnegative");
  return Order(twice_nu);
}

LogScaledValue LogScaledValue::from_double(double v) {
  if (v == 0.0) return zero();
  return {v > 0 ? 1 : -1, std::log(std::abs(v))};
}

LogScaledValue LogScaledValue::from_log(int sign, double log_magnitude) {
  if (sign == 0 || log_magnitude == -std::numeric_limits<double>::infinity()) return zero();
  return {sign > 0 ? 1 : -1, log_magnitude};
}

double LogScaledValue::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_magnitude);
}

LogScaledValue operator*(LogScaledValue a, LogScaledValue b) {
  if (a.is_zero() || b.is_zero()) return LogScaledValue::zero();
  return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
}

LogScaledValue operator/(LogScaledValue a, LogScaledValue b) {
  if (b.is_zero()) throw DomainError("division by zero in log domain");
  if (a.is_zero()) return LogScaledValue::zero();
  return {a.sign * b.sign, a.log_magnitude - b.log_magnitude};
}

LogScaledValue operator+(LogScaledValue a, LogScaledValue b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double top = std::max(a.log_magnitude, b.log_magnitude);
  const double sum = a.sign * std::exp(a.log_magnitude - top) + b.sign * std::exp(b.log_magnitude - top);
  if (sum == 0.0) return LogScaledValue::zero();
  return {sum > 0 ? 1 : -1, top + std::log(std::abs(sum))};
}

LogScaledValue operator-(LogScaledValue a, LogScaledValue b) { return a + (-b); }

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma: argument must be positive");
  // Shift into the Stirling regime and undo with the product of the shifts.
  double shift_log = 0.0;
  double z = x;
  double product = 1.0;
  while (z < 15.0) {
    product *= z;
    z += 1.0;
    if (product > 1e250) {
      shift_log += std::log(product);
      product = 1.0;
    }
  }
  shift_log += std::log(product);
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  // Bernoulli-number tail of the Stirling series.
  const double tail =
      inv * (1.0 / 12.0 +
             inv2 * (-1.0 / 360.0 +
                     inv2 * (1.0 / 1260.0 +
                             inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360360.0 + inv2 / 156.0))))));
  const double stirling = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + tail;
  return stirling - shift_log;
}

LogScaledValue besselj_log(Order order, double x) {
  require_positive(x, "besselj_log");
  return j_log(order.twice(), x);
}

double besselj(Order order, double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("besselj: argument must be nonnegative");
  if (x == 0.0) return order.twice() == 0 ? 1.0 : 0.0;
  const LogScaledValue v = j_log(order.twice(), x);
  if (v.is_zero() || v.log_magnitude < kUnderflowLog) return 0.0;
  return v.value();
}

BesselNeighbours besselj_neighbours_log(Order order, double x) {
  require_positive(x, "besselj_neighbours_log");
  const int t = order.twice();
  if (t == 0) return {-j_log(2, x), j_log(0, x)};
  if (t == 1) return {half_order_closed_form(-1, x), half_order_closed_form(1, x)};
  if (t == 2 || t == 3) return {j_log(t - 2, x), j_log(t, x)};
  const double nu = order.value();
  if (use_series(nu - 1.0, x)) return {series_log(nu - 1.0, x), series_log(nu, x)};
  if (use_series(nu, x)) return {miller_log(t, x).lower, series_log(nu, x)};
  return miller_log(t, x);
}

LogScaledValue besselj_prime_log(Order order, double x) {
  require_positive(x, "besselj_prime");
  const BesselNeighbours nb = besselj_neighbours_log(order, x);
  return nb.lower - nb.value.scaled(order.value() / x);
}

double besselj_prime(Order order, double x) {
  const LogScaledValue v = besselj_prime_log(order, x);
  if (v.is_zero() || v.log_magnitude < kUnderflowLog) return 0.0;
  return v.value();
}

double besselj_prime_symmetric(Order order, double x) {
  require_positive(x, "besselj_prime_symmetric");
  const int t = order.twice();
  const LogScaledValue below = t == 0 ? -j_log(2, x) : j_log(t - 2, x);
  const LogScaledValue above = j_log(t + 2, x);
  return (0.5 * (below - above).value());
}

LogScaledValue sphbessel_log(int m, double x) {
  require_positive(x, "sphbessel");
  return besselj_log(Order::half_integer(m), x).scaled(std::sqrt(kPi / (2.0 * x)));
}

double sphbessel(int m, double x) {
  const LogScaledValue v = sphbessel_log(m, x);
  if (v.is_zero() || v.log_magnitude < kUnderflowLog) return 0.0;
  return v.value();
}

LogScaledValue carlini_main(Order order, double x) {
  const double nu = order.value();
  if (!(nu > 0.0)) throw DomainError("carlini_main: order must be positive");
  if (!(x > 0.0) || !(x < nu)) throw DomainError("carlini_main: requires 0 < x < order");
  const double z = x / nu;
  const double one_minus_z2 = (1.0 - z) * (1.0 + z);
  const double s = std::sqrt(one_minus_z2);
  const double log_value = nu * std::log(x) + nu * s - nu - log_gamma(nu + 1.0) -
                           0.25 * std::log(one_minus_z2) - nu * std::log1p(s);
  return LogScaledValue::from_log(1, log_value);
}

}  // namespace surface_modes
