#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "surface_modes/specfun.hpp"
#include "surface_modes/zeros.hpp"

using namespace surface_modes;

namespace {

constexpr double kJ01 = 2.404825557695773;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("specfun") {
  TEST_CASE("closed forms and trivial values") {
    CHECK(besselj(Order::integer(0), 0.0) == 1.0);
    CHECK(besselj(Order::integer(3), 0.0) == 0.0);
    CHECK(besselj(Order::half_integer(0), std::numbers::pi / 2) ==
          doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));
    for (double x : {0.1, 1.0, 7.5, 40.0}) {
      CHECK(besselj(Order::half_integer(0), x) ==
            doctest::Approx(std::sqrt(2.0 / (std::numbers::pi * x)) * std::sin(x)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(besselj(Order::integer(1), -1.0), DomainError);
    CHECK_THROWS_AS(besselj_log(Order::integer(1), 0.0), DomainError);
  }

  TEST_CASE("J0 vanishes at its first zero") {
    const double zero = oracle::bisect([](double x) { return oracle::besselj_series(0.0, x); }, 2.0, 3.0);
    CHECK(std::abs(zero - kJ01) < 1e-12);
    CHECK(std::abs(besselj(Order::integer(0), kJ01)) < 1e-10);
    const LogScaledValue v = besselj_log(Order::integer(0), kJ01);
    CHECK((v.is_zero() || std::abs(v.value()) <= 1e-10));
  }

  TEST_CASE("power-series oracle agreement") {
    for (int twice = 0; twice <= 61; ++twice) {
      for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 50.0}) {
        const double ref = oracle::besselj_series(twice / 2.0, x);
        CAPTURE(twice);
        CAPTURE(x);
        CHECK(rel(besselj(Order::from_twice(twice), x), ref) <= 1e-12);
      }
    }
  }

  TEST_CASE("log magnitude tracks the oracle far below the turning point") {
    for (int nu : {50, 120, 200}) {
      for (double x : {1.0, 10.0, 0.4 * nu, 0.9 * nu}) {
        const double ref = oracle::log_abs_besselj_series(nu, x);
        CAPTURE(nu);
        CAPTURE(x);
        CHECK(std::abs(besselj_log(Order::integer(nu), x).log_magnitude - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
      }
    }
  }

  TEST_CASE("log and plain values agree where representable") {
    for (int twice = 0; twice <= 120; twice += 7) {
      for (double x = 0.25; x < 100.0; x *= 1.6) {
        const double plain = besselj(Order::from_twice(twice), x);
        if (std::abs(plain) < 1e-280) continue;
        const LogScaledValue l = besselj_log(Order::from_twice(twice), x);
        CHECK(l.sign == (plain > 0 ? 1 : -1));
        CHECK(rel(l.value(), plain) <= 1e-10);
      }
    }
    const LogScaledValue one = besselj_log(Order::integer(0), 1.0);
    CHECK(one.sign == 1);
    CHECK(one.log_magnitude == doctest::Approx(std::log(besselj(Order::integer(0), 1.0))).epsilon(1e-14));
  }

  TEST_CASE("underflow convention of the plain interface") {
    const LogScaledValue l = besselj_log(Order::integer(400), 5.0);
    CHECK(l.log_magnitude < -700);
    CHECK(besselj(Order::integer(400), 5.0) == 0.0);
  }

  TEST_CASE("three-term recurrence") {
    for (int nu = 1; nu <= 60; nu += 3) {
      for (double x = 0.5; x <= 100.0; x *= 1.7) {
        const double a = besselj(Order::integer(nu - 1), x);
        const double b = besselj(Order::integer(nu + 1), x);
        const double c = 2.0 * nu / x * besselj(Order::integer(nu), x);
        const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
        if (scale < 1e-250) continue;
        CHECK(std::abs(a + b - c) <= 1e-9 * scale);
      }
    }
  }

  TEST_CASE("derivative identities") {
    for (double x : {0.3, 2.0, 9.0, 33.0}) {
      CHECK(besselj_prime(Order::integer(0), x) ==
            doctest::Approx(-besselj(Order::integer(1), x)).epsilon(1e-13));
    }
    CHECK(besselj_prime(Order::integer(1), 1e-6) == doctest::Approx(0.5).epsilon(1e-9));
    const double h = 1e-6;
    const double fd =
        (besselj(Order::integer(5), 10.0 + h) - besselj(Order::integer(5), 10.0 - h)) / (2.0 * h);
    CHECK(std::abs(besselj_prime(Order::integer(5), 10.0) - fd) <= 1e-6);
    for (int twice = 1; twice <= 80; twice += 5) {
      for (double x : {0.7, 4.0, 18.0, 45.0}) {
        const double a = besselj_prime(Order::from_twice(twice), x);
        const double b = besselj_prime_symmetric(Order::from_twice(twice), x);
        if (std::abs(b) < 1e-200) continue;
        CAPTURE(twice);
        CAPTURE(x);
        CHECK(rel(a, b) <= 1e-10);
      }
    }
  }

  TEST_CASE("spherical Bessel functions") {
    CHECK(std::abs(sphbessel(0, std::numbers::pi)) <= 1e-12);
    CHECK(sphbessel(0, std::numbers::pi / 2) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));
    CHECK(sphbessel(10, 5.0) ==
          doctest::Approx(std::sqrt(std::numbers::pi / 10.0) * besselj(Order::half_integer(10), 5.0)).epsilon(1e-12));
    CHECK_THROWS_AS(sphbessel(2, 0.0), DomainError);
  }

  TEST_CASE("log gamma") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0));
    CHECK(std::abs(log_gamma(2.0)) < 1e-14);
    CHECK(log_gamma(11.0) == doctest::Approx(std::log(3628800.0)).epsilon(1e-14));
    for (double x = 1.0; x <= 500.0; x *= 1.9) {
      CHECK(rel(log_gamma(x) + 1.0, boost::math::lgamma(x) + 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  }

  TEST_CASE("Carlini main term") {
    auto ratio = [](int m, double x) {
      return std::exp(besselj_log(Order::integer(m), x).log_magnitude - carlini_main(m, x).log_magnitude);
    };
    CHECK(std::abs(ratio(50, 25.0) - 1.0) <= 0.05);
    CHECK(std::abs(ratio(100, 50.0) - 1.0) <= 0.02);
    CHECK(std::abs(besselj_log(Order::integer(200), 50.0).log_magnitude - carlini_main(200, 50.0).log_magnitude) <=
          0.05);
    CHECK(std::isfinite(carlini_main(2, 1.999).log_magnitude));
    CHECK_THROWS_AS(carlini_main(10, 10.0), DomainError);
    CHECK_THROWS_AS(carlini_main(10, 0.0), DomainError);

    for (double z : {0.3, 0.5, 0.75}) {
      double previous = std::abs(ratio(25, 25 * z) - 1.0);
      for (int m : {50, 100, 200}) {
        const double current = std::abs(ratio(m, m * z) - 1.0);
        CAPTURE(z);
        CAPTURE(m);
        CHECK(current <= previous + 1e-3);
        previous = current;
      }
    }
  }

  TEST_CASE("positive below the first derivative zero") {
    for (int m : {1, 5, 20, 60}) {
      const double jp = bessel_deriv_zero(Order::integer(m), 1).value;
      for (int i = 1; i < 50; ++i) CHECK(besselj_log(Order::integer(m), jp * i / 50.0).sign == 1);
    }
  }

  TEST_CASE("concurrent evaluation is consistent") {
    std::vector<double> serial(64), parallel(64);
    for (int i = 0; i < 64; ++i) serial[i] = besselj(Order::from_twice(i), 1.0 + i);
    std::vector<std::jthread> pool;
    for (int t = 0; t < 4; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < 64; i += 4) parallel[i] = besselj(Order::from_twice(i), 1.0 + i);
      });
    }
    pool.clear();
    CHECK(serial == parallel);
  }
}
