#include <cmath>

#include "doctest.h"
#include "surface_modes/verify.hpp"

using namespace surface_modes;

TEST_SUITE("verify") {
  TEST_CASE("zero below the scaled order") {
    const BoundCheck c = check_lemma1(2.0, 1, 30);
    CHECK(c.passed);
    CHECK(c.lhs == doctest::Approx(36.098336956747725 / 2.0).epsilon(1e-10));
    CHECK(c.rhs == 30.0);
    CHECK(c.in_regime);
    CHECK(check_lemma1(1.01, 1, 5).in_regime == false);
    CHECK_THROWS_AS(check_lemma1(0.5, 1, 5), DomainError);

    // once it passes it keeps passing
    for (double n : {1.5, 2.0, 4.0}) {
      bool seen = false;
      for (int m = 1; m <= 200; ++m) {
        const bool passed = check_lemma1(n, 1, m).passed;
        if (seen) CHECK(passed);
        seen = seen || passed;
      }
      CHECK(seen);
    }
  }

  TEST_CASE("sign change") {
    CHECK(check_sign_change(2.0, 1, 30, Dimension::two).passed);
    CHECK(check_sign_change(2.0, 1, 30, Dimension::three).passed);
    CHECK(check_sign_change(1.05, 1, 2).in_regime == false);
  }

  TEST_CASE("Krasikov bound") {
    const ModeContext ctx = make_context(2.0, 1, 30, Dimension::two);
    const BoundCheck at_k = check_krasikov(30, ctx.eigen.k);
    CHECK(at_k.passed);
    CHECK(at_k.in_regime);
    CHECK(check_krasikov(10, 5.0).passed);
    CHECK_THROWS_AS(check_krasikov(10, std::sqrt(11.0 * 13.0)), DomainError);
    CHECK_THROWS_AS(check_krasikov(10, 0.0), DomainError);
    CHECK(check_krasikov(Order::half_integer(10), 5.0).in_regime == false);
    for (int m = 1; m <= 60; m += 4) {
      for (double f : {0.1, 0.4, 0.7, 0.9}) {
        const BoundCheck c = check_krasikov(m, f * m);
        if (c.in_regime) CHECK(c.passed);
      }
    }
  }

  TEST_CASE("interior ratio bound") {
    const BoundCheck c = check_ratio_bound_gg1(2.0, 1, 40, 0.5);
    CHECK(c.passed);
    CHECK(c.margin > 0.0);
    double previous = INFINITY;
    const Medium medium(2.0, Dimension::two);
    for (int m = 20; m <= 80; m += 10) {
      const BoundCheck b = check_ratio_bound_gg1(2.0, 1, m, 0.5);
      CHECK(b.rhs < previous);
      previous = b.rhs;
    }
    const BoundCheck near_one = check_ratio_bound_gg1(2.0, 1, 20, 0.999);
    CHECK(std::isfinite(near_one.margin));
  }

  TEST_CASE("Carlini decomposition") {
    const CarliniDecomposition d = carlini_decomposition(2.0, 1, 40, 0.5);
    CHECK(d.I1 > 0.0);
    CHECK(d.I1 < 1.0);
    CHECK(d.I2 > 0.0);
    CHECK(d.I2 < 1.0);
    CHECK(d.I3_empirical < 2.0);
    CHECK(d.delta > 0.0);
    CHECK(d.delta < 1.0);
    CHECK(d.reconstruction_error <= 1e-10);

    // delta approaches the limit set by k/m -> 1/n
    const double limit = 1.0 - carlini_phi(0.5 / 2.0) / carlini_phi(1.0 / 2.0);
    double previous_gap = INFINITY;
    for (int m : {20, 40, 80, 160}) {
      const double gap = std::abs(carlini_decomposition(2.0, 1, m, 0.5).delta - limit);
      CHECK(gap < previous_gap);
      previous_gap = gap;
    }
    CHECK_THROWS_AS(carlini_phi(1.0), DomainError);
  }

  TEST_CASE("final decay") {
    const BoundCheck c = check_final_decay(2.0, 1, 60, 0.5);
    CHECK(c.passed);
    double previous = INFINITY;
    for (int m = 20; m <= 80; m += 20) {
      const BoundCheck b = check_final_decay(2.0, 1, m, 0.3);
      CHECK(std::log(b.rhs) < previous);
      previous = std::log(b.rhs);
    }
  }

  TEST_CASE("w bracket") {
    CHECK(check_w_bracket(2.0, 1, 60, 0.5).passed);
    double previous = INFINITY;
    for (int m = 20; m <= 120; m += 20) {
      const ModeContext ctx = make_context(2.0, 1, m, Dimension::two);
      const BoundCheck c = check_w_bracket(ctx, 0.5);
      const double gap = std::abs(c.rhs / (2.0 * ctx.eigen.k) - 1.0);
      CHECK(gap < previous);
      previous = gap;
      CHECK(check_w_growth(ctx).in_regime == false);
    }
  }

  TEST_CASE("per-mode properties") {
    for (Dimension dim : {Dimension::two, Dimension::three}) {
      for (int m : {20, 45, 80}) {
        const ModeContext ctx = make_context(2.0, 1, m, dim);
        CHECK(check_k_window(ctx).passed);
        CHECK(check_convexity(ctx).passed);
        CHECK(check_triangle_bound(ctx).passed);
        for (double tau : {0.3, 0.5, 0.8}) CHECK(check_increasing_bound(ctx, tau).passed);
      }
    }
  }

  TEST_CASE("delta positivity over the grid") {
    for (double n : {1.5, 2.0, 4.0}) {
      for (int m = 20; m <= 80; m += 15) {
        const ModeContext ctx = make_context(n, 1, m, Dimension::two);
        for (double tau : {0.3, 0.5, 0.8}) CHECK(carlini_decomposition(ctx, tau).delta > 0.0);
      }
    }
  }

  TEST_CASE("grid ordering and regime filtering") {
    VerifyGrid grid;
    grid.n_values = {1.5, 2.0};
    grid.m_min = 20;
    grid.m_max = 24;
    grid.taus = {0.3, 0.5};
    const auto checks = verify_grid(grid);
    REQUIRE(!checks.empty());
    double last_n = 0.0;
    int last_m = 0;
    for (const BoundCheck& c : checks) {
      CHECK((c.inputs.n > last_n || (c.inputs.n == last_n && c.inputs.m >= last_m)));
      last_n = c.inputs.n;
      last_m = c.inputs.m;
      if (c.in_regime) {
        CAPTURE(c.name);
        CAPTURE(c.inputs.m);
        CHECK(c.passed);
      }
    }
    const auto again = verify_grid(grid, {}, {}, 1);
    REQUIRE(again.size() == checks.size());
    for (std::size_t i = 0; i < checks.size(); ++i) {
      CHECK(again[i].name == checks[i].name);
      CHECK(again[i].lhs == checks[i].lhs);
    }
  }
}
