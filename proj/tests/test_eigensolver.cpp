#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "surface_modes/eigensolver.hpp"

using namespace surface_modes;

namespace {

double oracle_char_fn(double k, double n, double nu) {
  return oracle::besselj_series(nu - 1.0, k) * oracle::besselj_series(nu, k * n) -
         n * oracle::besselj_series(nu, k) * oracle::besselj_series(nu - 1.0, k * n);
}

}  // namespace

TEST_SUITE("eigensolver") {
  TEST_CASE("medium invariants") {
    CHECK_THROWS_WITH_AS(Medium(1.0, Dimension::two), "contrast must differ from 1", DomainError);
    CHECK_THROWS_AS(Medium(0.0, Dimension::two), DomainError);
    CHECK_THROWS_AS(Medium(-2.0, Dimension::three), DomainError);
    CHECK_THROWS_AS(Medium(std::nan(""), Dimension::two), DomainError);
    CHECK(Medium(0.5, Dimension::three).dual().contrast() == 2.0);
    CHECK_THROWS_AS(ModeIndex(0, 1), DomainError);
    CHECK_THROWS_AS(ModeIndex(3, 0), DomainError);
  }

  TEST_CASE("characteristic function against the series oracle") {
    const Medium two(2.0, Dimension::two);
    const Medium three(2.0, Dimension::three);
    for (double k : {5.0, 12.3, 19.0, 25.0}) {
      CHECK(char_fn(k, two, 12) == doctest::Approx(oracle_char_fn(k, 2.0, 12.0)).epsilon(1e-10));
      CHECK(char_fn(k, three, 12) == doctest::Approx(oracle_char_fn(k, 2.0, 12.5)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(char_fn(0.0, two, 3), DomainError);
  }

  TEST_CASE("endpoint sign change at m = 30") {
    for (Dimension dim : {Dimension::two, Dimension::three}) {
      const Medium medium(2.0, dim);
      const Interval b = eigen_bracket(medium, ModeIndex(30, 1));
      CHECK(char_fn_log(b.lo, medium, 30).sign * char_fn_log(b.hi, medium, 30).sign == -1);
    }
  }

  TEST_CASE("bracket definition") {
    const Medium medium(2.0, Dimension::two);
    const Interval b = eigen_bracket(medium, ModeIndex(30, 1));
    CHECK(b.lo == doctest::Approx(bessel_zero(Order::integer(30), 1).value / 2.0).epsilon(1e-15));
    CHECK(b.hi == doctest::Approx(bessel_zero(Order::integer(30), 2).value / 2.0).epsilon(1e-15));
    const Interval b4 = eigen_bracket(Medium(4.0, Dimension::two), ModeIndex(30, 1));
    CHECK(b4.lo == doctest::Approx(b.lo / 2.0).epsilon(1e-15));
    CHECK(b4.hi == doctest::Approx(b.hi / 2.0).epsilon(1e-15));
  }

  TEST_CASE("eigenvalue at m = 30 matches bisection on the oracle") {
    const Medium medium(2.0, Dimension::two);
    const TransmissionEigenvalue ev = find_eigenvalue(medium, ModeIndex(30, 1));
    CHECK(ev.bracket.contains_strictly(ev.k));
    CHECK(ev.residual <= 1e-10);
    CHECK(ev.probe_root_count >= 1);
    const double ref = oracle::bisect([](double k) { return oracle_char_fn(k, 2.0, 30.0); }, ev.bracket.lo,
                                      ev.bracket.hi, 80);
    CHECK(std::abs(ev.k - ref) <= 1e-10 * ref);
    CHECK(30.0 / 2.0 <= ev.k);
    CHECK(ev.k <= 3.0 * 30.0 / 4.0);

    const TransmissionEigenvalue ev3 = find_eigenvalue(Medium(2.0, Dimension::three), ModeIndex(30, 1));
    const double ref3 = oracle::bisect([](double k) { return oracle_char_fn(k, 2.0, 30.5); }, ev3.bracket.lo,
                                       ev3.bracket.hi, 80);
    CHECK(std::abs(ev3.k - ref3) <= 1e-10 * ref3);
  }

  TEST_CASE("no sign change below the regime is reported") {
    // small m: either a root is certified or NoSignChange names the mode
    for (int m = 1; m <= 6; ++m) {
      try {
        const TransmissionEigenvalue ev = find_eigenvalue(Medium(1.1, Dimension::two), ModeIndex(m, 1));
        CHECK(ev.bracket.contains_strictly(ev.k));
      } catch (const NoSignChange& e) {
        CHECK(e.m() == m);
        CHECK(e.s0() == 1);
      }
    }
  }

  TEST_CASE("scan over m = 20..80") {
    const Medium medium(2.0, Dimension::two);
    const ScanResult result = scan(medium, 1, 20, 80);
    REQUIRE(result.eigenvalues.size() == 61);
    CHECK(result.failures.empty());
    for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) {
      const TransmissionEigenvalue& ev = result.eigenvalues[i];
      CHECK(ev.mode.m == 20 + static_cast<int>(i));
      CHECK(ev.residual <= 1e-10);
      CHECK(ev.bracket.contains_strictly(ev.k));
      const double ratio = ev.k / ev.mode.m;
      CHECK(ratio > 0.5);
      CHECK(ratio < 0.75);
    }
    const ScanResult single = scan(medium, 1, 20, 80, {}, 1);
    for (std::size_t i = 0; i < single.eigenvalues.size(); ++i) CHECK(single.eigenvalues[i].k == result.eigenvalues[i].k);
  }

  TEST_CASE("sign-product negativity above m0") {
    for (double n : {1.5, 2.0, 4.0}) {
      for (int s0 : {1, 2}) {
        for (Dimension dim : {Dimension::two, Dimension::three}) {
          const Medium medium(n, dim);
          for (int m = empirical_m0(n, s0, dim) + 1; m <= 80; m += 3) {
            const Interval b = eigen_bracket(medium, ModeIndex(m, s0));
            CAPTURE(n);
            CAPTURE(m);
            CHECK(char_fn_log(b.lo, medium, m).sign * char_fn_log(b.hi, medium, m).sign == -1);
          }
        }
      }
    }
  }

  TEST_CASE("duality for n < 1") {
    for (Dimension dim : {Dimension::two, Dimension::three}) {
      const Medium half(0.5, dim);
      for (int m : {20, 35, 60}) {
        const TransmissionEigenvalue dual = find_eigenvalue(half.dual(), ModeIndex(m, 1));
        const TransmissionEigenvalue ev = find_eigenvalue(half, ModeIndex(m, 1));
        CHECK(ev.k == 2.0 * dual.k);
        CHECK(ev.roles_swapped);
        REQUIRE(ev.dual_k.has_value());
        CHECK(*ev.dual_k == dual.k);
        CHECK(ev.residual <= 1e-8);
        const TransmissionEigenvalue mapped = map_inverse_contrast(half, dual);
        CHECK(mapped.k == ev.k);
      }
    }
    const TransmissionEigenvalue dual = find_eigenvalue(Medium(2.0, Dimension::two), ModeIndex(20, 1));
    CHECK_THROWS_AS(map_inverse_contrast(Medium(2.0, Dimension::two), dual), DomainError);
  }

  TEST_CASE("residual is scale free") {
    // residual_scale is huge at m=80, 3D and tiny at small arguments, yet
    // relative residuals meet the same tolerance
    const TransmissionEigenvalue a = find_eigenvalue(Medium(2.0, Dimension::three), ModeIndex(80, 1));
    const TransmissionEigenvalue b = find_eigenvalue(Medium(4.0, Dimension::two), ModeIndex(20, 1));
    CHECK(a.residual <= 1e-10);
    CHECK(b.residual <= 1e-10);
    CHECK(a.residual_scale.log_magnitude != b.residual_scale.log_magnitude);
  }
}
