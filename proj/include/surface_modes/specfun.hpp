#pragma once

#include <cmath>
#include <limits>

#include "surface_modes/errors.hpp"

namespace surface_modes {

/// Order of a Bessel function, stored as twice its value so that integer
/// orders m and half-integer orders m + 1/2 are both exact.
class Order {
 public:
  Order() = default;
  static Order integer(int m);
  /// The order m + 1/2 used by the spherical Bessel function j_m.
  static Order half_integer(int m);
  static Order from_twice(int twice_nu);

  int twice() const { return twice_nu_; }
  double value() const { return 0.5 * twice_nu_; }
  bool is_integer() const { return twice_nu_ % 2 == 0; }

  friend bool operator==(Order, Order) = default;
  friend auto operator<=>(Order, Order) = default;

 private:
  explicit Order(int twice_nu) : twice_nu_(twice_nu) {}
  int twice_nu_ = 0;
};

/// A real number carried as sign and natural log of its magnitude, so that
/// values far below the double range keep full relative precision.
struct LogScaledValue {
  int sign = 0;
  double log_magnitude = -std::numeric_limits<double>::infinity();

  static LogScaledValue zero() { return {}; }
  static LogScaledValue from_double(double v);
  static LogScaledValue from_log(int sign, double log_magnitude);

  bool is_zero() const { return sign == 0; }
  /// Plain value; 0 when the magnitude underflows, +-inf on overflow.
  double value() const;
  LogScaledValue abs() const { return from_log(sign == 0 ? 0 : 1, log_magnitude); }
  LogScaledValue operator-() const { return {-sign, log_magnitude}; }

  friend LogScaledValue operator*(LogScaledValue a, LogScaledValue b);
  friend LogScaledValue operator/(LogScaledValue a, LogScaledValue b);
  friend LogScaledValue operator+(LogScaledValue a, LogScaledValue b);
  friend LogScaledValue operator-(LogScaledValue a, LogScaledValue b);
  LogScaledValue scaled(double factor) const { return *this * from_double(factor); }
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// J_nu(x) for x >= 0. Returns 0 once ln|J| drops below -700; use
/// besselj_log for the true scale there.
double besselj(Order order, double x);

/// Sign and log-magnitude of J_nu(x), x > 0. Never underflows.
LogScaledValue besselj_log(Order order, double x);

/// J'_nu(x), x > 0, from J'_nu = J_{nu-1} - (nu/x) J_nu.
double besselj_prime(Order order, double x);
LogScaledValue besselj_prime_log(Order order, double x);

/// J'_nu(x) from the symmetric form (J_{nu-1} - J_{nu+1}) / 2. Kept as an
/// independent route for cross-checks.
double besselj_prime_symmetric(Order order, double x);

/// J_{nu-1}(x) and J_nu(x) from a single recurrence pass. For nu = 0 the
/// first member is J_{-1} = -J_1; for nu = 1/2 it is J_{-1/2}.
struct BesselNeighbours {
  LogScaledValue lower;
  LogScaledValue value;
};
BesselNeighbours besselj_neighbours_log(Order order, double x);

/// Spherical Bessel function j_m(x) = sqrt(pi / (2x)) J_{m+1/2}(x), x > 0.
double sphbessel(int m, double x);
LogScaledValue sphbessel_log(int m, double x);

/// Main term of the Carlini large-order approximation of J_nu(x) below the
/// turning point 0 < x < nu:
///   x^nu exp(nu s) / (e^nu Gamma(nu+1) (1-z^2)^{1/4} (1+s)^nu),
/// with z = x/nu and s = sqrt(1 - z^2). Returned in log domain.
LogScaledValue carlini_main(Order order, double x);
inline LogScaledValue carlini_main(int m, double x) { return carlini_main(Order::integer(m), x); }

}  // namespace surface_modes
