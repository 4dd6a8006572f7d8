#include "surface_modes/verify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "surface_modes/parallel.hpp"

namespace surface_modes {

namespace {

constexpr double kLn10 = 2.302585092994046;
constexpr double kInterlaceMargin = 1e-9;
constexpr double kConvexitySlack = 1e-8;
constexpr double kConvexityStep = 1e-3;

CheckInputs inputs_for(const ModeContext& ctx) {
  CheckInputs in;
  in.n = ctx.medium.contrast();
  in.dim = as_int(ctx.medium.dim());
  in.s0 = ctx.mode.s0;
  in.m = ctx.mode.m;
  return in;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Compares two positive log-domain quantities, lhs <= rhs; margin is
// log10(rhs / lhs).
void compare_logs(BoundCheck& c, double log_lhs, double log_rhs) {
  c.lhs = std::exp(log_lhs);
  c.rhs = std::exp(log_rhs);
  c.margin = (log_rhs - log_lhs) / kLn10;
  c.passed = log_lhs <= log_rhs;
}

double ratio_v_squared_log(const ModeContext& ctx, double tau, const QuadratureOptions& quad) {
  const Order order = ctx.medium.order_for(ctx.mode.m);
  const double k = ctx.eigen.k;
  const LogScaledValue inner = radial_moment_log(order, ctx.medium.dim(), k, tau, quad);
  const LogScaledValue full = radial_moment_log(order, ctx.medium.dim(), k, 1.0, quad);
  return inner.log_magnitude - full.log_magnitude;
}

// int_0^tau r J_nu^2(k r) dr in log domain, for either dimension.
double cylindrical_moment_log(const ModeContext& ctx, double tau, const QuadratureOptions& quad) {
  return radial_moment_log(ctx.medium.order_for(ctx.mode.m), Dimension::two, ctx.eigen.k, tau, quad).log_magnitude;
}

}  // namespace

double carlini_phi(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("carlini_phi: argument must lie in (0, 1)");
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  return x * std::exp(s) / (1.0 + s);
}

ModeContext make_context(double n, int s0, int m, Dimension dim, const SolverOptions& solver) {
  if (!(n > 1.0)) throw DomainError("bound checks require contrast n > 1");
  const Medium medium(n, dim);
  const ModeIndex mode(m, s0);
  TransmissionEigenvalue eigen = find_eigenvalue(medium, mode, solver);
  EigenmodePair pair = make_pair(eigen);
  return ModeContext{medium, mode, std::move(eigen), std::move(pair), empirical_m0(n, s0, dim)};
}

BoundCheck check_lemma1(double n, int s0, int m, Dimension dim) {
  if (!(n > 1.0)) throw DomainError("check_lemma1: contrast must exceed 1");
  const Order order = order_for(dim, m);
  BoundCheck c;
  c.name = "lemma1";
  c.inputs.n = n;
  c.inputs.dim = as_int(dim);
  c.inputs.s0 = s0;
  c.inputs.m = m;
  c.lhs = bessel_zero(order, s0).value / n;
  c.rhs = order.value();
  c.margin = c.rhs - c.lhs;
  c.passed = c.lhs <= c.rhs;
  c.in_regime = m > empirical_m0(n, s0, dim);
  return c;
}

BoundCheck check_sign_change(double n, int s0, int m, Dimension dim) {
  if (!(n > 1.0)) throw DomainError("check_sign_change: contrast must exceed 1");
  const Medium medium(n, dim);
  const ModeIndex mode(m, s0);
  const Interval bracket = eigen_bracket(medium, mode);
  const LogScaledValue product = char_fn_log(bracket.lo, medium, m) * char_fn_log(bracket.hi, medium, m);
  BoundCheck c;
  c.name = "sign_change";
  c.inputs.n = n;
  c.inputs.dim = as_int(dim);
  c.inputs.s0 = s0;
  c.inputs.m = m;
  c.lhs = product.value();
  c.rhs = 0.0;
  c.margin = -product.sign;
  c.passed = product.sign < 0;
  c.in_regime = m > empirical_m0(n, s0, dim);
  c.note = "log10|product|=" + fmt(product.log_magnitude / kLn10);
  return c;
}

BoundCheck check_krasikov(Order order, double x) {
  const double nu = order.value();
  if (!(x > 0.0) || !(x < std::sqrt((nu + 1.0) * (nu + 3.0)))) {
    throw DomainError("check_krasikov: requires 0 < x < sqrt((nu+1)(nu+3))");
  }
  BoundCheck c;
  c.name = "krasikov";
  c.inputs.m = order.twice() / 2;
  c.inputs.x = x;
  c.in_regime = order.is_integer();
  if (!order.is_integer()) c.note = "half-integer order: report only";

  const LogScaledValue j = besselj_log(order, x);
  const LogScaledValue jp = besselj_prime_log(order, x);
  const double a = (2.0 * nu + 1.0) * (2.0 * nu + 3.0);
  const double radicand = std::pow(a - 4.0 * x * x, 3) + a * a;
  const double denominator = 2.0 * x * ((2.0 * nu + 1.0) * (2.0 * nu + 5.0) - 4.0 * x * x);
  if (j.is_zero() || (!jp.is_zero() && j.log_magnitude < jp.log_magnitude + std::log(1e-13)) ||
      radicand < 0.0 || denominator <= 0.0) {
    c.in_regime = false;
    c.note = "skipped: J vanishes or the bound is undefined here";
    return c;
  }
  c.lhs = (jp / j).value();
  c.rhs = (4.0 * x * x - 12.0 * nu - 6.0 + std::sqrt(radicand)) / denominator;
  c.margin = c.rhs - c.lhs;
  c.passed = c.lhs <= c.rhs;
  c.note += (c.note.empty() ? "" : "; ") + std::string("x*J'/J=") + fmt(x * c.lhs);
  return c;
}

BoundCheck check_ratio_bound_gg1(const ModeContext& ctx, double tau, const QuadratureOptions& quad) {
  const Order order = ctx.medium.order_for(ctx.mode.m);
  const double k = ctx.eigen.k;
  const double n = ctx.medium.contrast();
  const double m = ctx.mode.m;
  const double log_j_ratio = besselj_log(order, k * tau).log_magnitude - besselj_log(order, k).log_magnitude;

  BoundCheck c;
  c.name = "ratio_bound_gg1";
  c.inputs = inputs_for(ctx);
  c.inputs.tau = tau;
  const double log_rhs = std::log(36.0 * n) + 4.0 * std::log(m) + 2.0 * std::log(tau) + 2.0 * log_j_ratio;
  compare_logs(c, ratio_v_squared_log(ctx, tau, quad), log_rhs);
  c.in_regime = ctx.in_regime();
  return c;
}

BoundCheck check_ratio_bound_gg1(double n, int s0, int m, double tau, Dimension dim) {
  return check_ratio_bound_gg1(make_context(n, s0, m, dim), tau);
}

CarliniDecomposition carlini_decomposition(const ModeContext& ctx, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("carlini_decomposition: tau must lie in (0, 1)");
  const Order order = ctx.medium.order_for(ctx.mode.m);
  const double nu = order.value();
  const double k = ctx.eigen.k;
  if (!(k < nu)) throw DomainError("carlini_decomposition: eigenvalue lies beyond the turning point");

  const double z = k / nu;
  const double zt = k * tau / nu;
  CarliniDecomposition d;
  d.m = ctx.mode.m;
  d.tau = tau;
  d.n = ctx.medium.contrast();
  d.k = k;
  d.I1 = std::pow((1.0 - z * z) / (1.0 - zt * zt), 0.25);
  const double phi_ratio = carlini_phi(zt) / carlini_phi(z);
  d.I2 = std::pow(phi_ratio, nu);
  d.delta = 1.0 - phi_ratio;

  const LogScaledValue j_tau = besselj_log(order, k * tau);
  const LogScaledValue j_one = besselj_log(order, k);
  const double log_ratio = j_tau.log_magnitude - j_one.log_magnitude;
  d.bessel_ratio = std::exp(log_ratio);
  d.I3_empirical = std::exp(log_ratio - std::log(d.I1) - nu * std::log(phi_ratio));
  d.reconstruction_error = std::abs(d.I1 * d.I2 * d.I3_empirical / d.bessel_ratio - 1.0);
  return d;
}

CarliniDecomposition carlini_decomposition(double n, int s0, int m, double tau) {
  return carlini_decomposition(make_context(n, s0, m, Dimension::two), tau);
}

BoundCheck check_final_decay(const ModeContext& ctx, double tau, const QuadratureOptions& quad) {
  const CarliniDecomposition d = carlini_decomposition(ctx, tau);
  const double n = ctx.medium.contrast();
  const double m = ctx.mode.m;
  const double nu = ctx.medium.order_for(ctx.mode.m).value();
  BoundCheck c;
  c.name = "final_decay";
  c.inputs = inputs_for(ctx);
  c.inputs.tau = tau;
  const double log_rhs = std::log(144.0 * n / ((n - 1.0) * (n - 1.0))) + 4.0 * std::log(m) +
                         2.0 * std::log(tau) + 2.0 * nu * std::log1p(-d.delta);
  compare_logs(c, ratio_v_squared_log(ctx, tau, quad), log_rhs);
  c.in_regime = ctx.in_regime() && ctx.medium.dim() == Dimension::two;
  if (ctx.medium.dim() == Dimension::three) c.note = "3D analogue with nu = m + 1/2: report only";
  return c;
}

BoundCheck check_final_decay(double n, int s0, int m, double tau) {
  return check_final_decay(make_context(n, s0, m, Dimension::two), tau);
}

BoundCheck check_w_bracket(const ModeContext& ctx, double tau) {
  const Order order = ctx.medium.order_for(ctx.mode.m);
  const double nk = ctx.medium.contrast() * ctx.eigen.k;
  BoundCheck c;
  c.name = "w_bracket";
  c.inputs = inputs_for(ctx);
  c.inputs.tau = tau;
  c.lhs = nk * tau;
  c.rhs = bessel_deriv_zero(order, 1).value;
  c.margin = c.rhs - c.lhs;
  c.passed = c.lhs < c.rhs;
  c.in_regime = ctx.in_regime();
  c.note = "j'_1/(nk)=" + fmt(c.rhs / nk);
  return c;
}

BoundCheck check_w_bracket(double n, int s0, int m, double tau, Dimension dim) {
  return check_w_bracket(make_context(n, s0, m, dim), tau);
}

BoundCheck check_w_growth(const ModeContext& ctx) {
  const double m = ctx.mode.m;
  BoundCheck c;
  c.name = "w_growth";
  c.inputs = inputs_for(ctx);
  c.lhs = m * (1.0 + 2.0 * std::pow((ctx.mode.s0 + 1.0) / m, 2.0 / 3.0));
  c.rhs = ctx.medium.contrast() * ctx.eigen.k;
  c.margin = c.rhs - c.lhs;
  c.passed = c.lhs < c.rhs;
  c.in_regime = false;
  c.note = "auxiliary lower bound on n k: report only";
  return c;
}

std::vector<BoundCheck> check_interlacing(int m_max, int s_max) {
  if (m_max < 1 || s_max < 1) throw DomainError("check_interlacing: limits must be >= 1");
  std::vector<BoundCheck> out;
  auto link = [&](const std::string& name, int m, int s, double lhs, double rhs, bool strict) {
    BoundCheck c;
    c.name = name;
    c.inputs.m = m;
    c.inputs.s0 = s;
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = rhs - lhs;
    c.passed = strict ? c.margin >= kInterlaceMargin : lhs <= rhs;
    out.push_back(std::move(c));
  };

  for (int m = 1; m <= m_max; ++m) {
    const Order order = Order::integer(m);
    std::vector<double> j(s_max + 2), jp(s_max + 2);
    for (int s = 1; s <= s_max + 1; ++s) {
      j[s] = bessel_zero(order, s).value;
      jp[s] = bessel_deriv_zero(order, s).value;
    }
    link("interlace_order_le_dzero", m, 1, m, jp[1], false);
    for (int s = 1; s <= s_max; ++s) {
      link("interlace_dzero_lt_zero", m, s, jp[s], j[s], true);
      link("interlace_zero_lt_next_dzero", m, s, j[s], jp[s + 1], true);
    }
    if (m >= 2) {
      const Order lower = Order::integer(m - 1);
      for (int s = 1; s < s_max; ++s) {
        const LogScaledValue a = besselj_log(lower, j[s]);
        const LogScaledValue b = besselj_log(lower, j[s + 1]);
        BoundCheck c;
        c.name = "interlace_adjacent_order";
        c.inputs.m = m;
        c.inputs.s0 = s;
        c.lhs = (a * b).value();
        c.rhs = 0.0;
        c.margin = -c.lhs;
        c.passed = a.sign * b.sign < 0;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

BoundCheck check_k_window(const ModeContext& ctx) {
  const double n = ctx.medium.contrast();
  const double ratio = ctx.eigen.k / ctx.mode.m;
  BoundCheck c;
  c.name = "k_window";
  c.inputs = inputs_for(ctx);
  c.lhs = ratio;
  c.rhs = (1.0 + n) / (2.0 * n);
  c.margin = std::min(ratio - 1.0 / n, c.rhs - ratio);
  c.passed = 1.0 / n < ratio && ratio < c.rhs;
  // The upper end rests on j_{nu,s0+1} / n <= (1+n) nu / (2n), which sets in
  // later than the m0 threshold.
  const Order order = ctx.medium.order_for(ctx.mode.m);
  const double top = bessel_zero(order, ctx.mode.s0 + 1).value / n;
  c.in_regime = ctx.in_regime() && top <= c.rhs * order.value();
  if (!c.in_regime) c.note = "bracket end j_{nu,s0+1}/n = " + fmt(top) + " exceeds (1+n) nu/(2n)";
  return c;
}

BoundCheck check_convexity(const ModeContext& ctx) {
  const Order order = ctx.medium.order_for(ctx.mode.m);
  const double k = ctx.eigen.k;
  const int steps = static_cast<int>(std::lround(1.0 / kConvexityStep));
  std::vector<LogScaledValue> g(steps + 1);
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= steps; ++i) {
    const double r = static_cast<double>(i) / steps;
    const LogScaledValue j = besselj_log(order, k * r);
    g[i] = (j * j).scaled(r);
    if (!g[i].is_zero()) top = std::max(top, g[i].log_magnitude);
  }
  auto plain = [&](int i) { return g[i].is_zero() ? 0.0 : std::exp(g[i].log_magnitude - top); };
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 1; i < steps; ++i) worst = std::min(worst, plain(i + 1) - 2.0 * plain(i) + plain(i - 1));

  BoundCheck c;
  c.name = "convexity";
  c.inputs = inputs_for(ctx);
  c.lhs = worst;  // relative to max|g|
  c.rhs = -kConvexitySlack;
  c.margin = c.lhs - c.rhs;
  c.passed = c.lhs >= c.rhs;
  c.in_regime = ctx.in_regime();
  return c;
}

BoundCheck check_triangle_bound(const ModeContext& ctx, const QuadratureOptions& quad) {
  const Order order = ctx.medium.order_for(ctx.mode.m);
  const double k = ctx.eigen.k;
  const LogScaledValue j = besselj_log(order, k);
  const LogScaledValue jp = besselj_prime_log(order, k);
  const LogScaledValue area = (j * j * j).scaled(0.5) / (j + jp.scaled(2.0 * k));
  BoundCheck c;
  c.name = "triangle_lower_bound";
  c.inputs = inputs_for(ctx);
  if (area.sign <= 0) {
    c.in_regime = false;
    c.note = "tangent does not close a triangle";
    return c;
  }
  compare_logs(c, area.log_magnitude, cylindrical_moment_log(ctx, 1.0, quad));
  c.in_regime = ctx.in_regime();
  return c;
}

BoundCheck check_increasing_bound(const ModeContext& ctx, double tau, const QuadratureOptions& quad) {
  const Order order = ctx.medium.order_for(ctx.mode.m);
  const LogScaledValue j = besselj_log(order, ctx.eigen.k * tau);
  BoundCheck c;
  c.name = "increasing_upper_bound";
  c.inputs = inputs_for(ctx);
  c.inputs.tau = tau;
  compare_logs(c, cylindrical_moment_log(ctx, tau, quad), 2.0 * std::log(tau) + 2.0 * j.log_magnitude);
  c.in_regime = ctx.in_regime();
  return c;
}

std::vector<BoundCheck> verify_grid(const VerifyGrid& grid, const SolverOptions& solver,
                                    const QuadratureOptions& quad, unsigned threads) {
  if (grid.m_min < 1 || grid.m_max < grid.m_min) throw DomainError("verify_grid: invalid m range");
  for (double tau : grid.taus) {
    if (!(tau > 0.0 && tau < 1.0)) throw DomainError("verify_grid: tau must lie in (0, 1)");
  }
  const std::size_t per_n = static_cast<std::size_t>(grid.m_max - grid.m_min + 1);
  const std::size_t count = per_n * grid.n_values.size();
  std::vector<std::vector<BoundCheck>> blocks(count);

  parallel_for(
      count,
      [&](std::size_t idx) {
        const double n = grid.n_values[idx / per_n];
        const int m = grid.m_min + static_cast<int>(idx % per_n);
        auto& out = blocks[idx];
        out.push_back(check_lemma1(n, grid.s0, m, grid.dim));
        out.push_back(check_sign_change(n, grid.s0, m, grid.dim));

        std::optional<ModeContext> ctx;
        try {
          ctx = make_context(n, grid.s0, m, grid.dim, solver);
        } catch (const std::exception& e) {
          BoundCheck c;
          c.name = "eigenvalue";
          c.inputs.n = n;
          c.inputs.dim = as_int(grid.dim);
          c.inputs.s0 = grid.s0;
          c.inputs.m = m;
          c.in_regime = m > empirical_m0(n, grid.s0, grid.dim);
          c.note = e.what();
          out.push_back(std::move(c));
          return;
        }

        out.push_back(check_krasikov(ctx->medium.order_for(m), ctx->eigen.k));
        out.back().inputs = inputs_for(*ctx);
        out.back().inputs.x = ctx->eigen.k;
        if (grid.dim == Dimension::three) out.back().in_regime = false;
        out.push_back(check_k_window(*ctx));
        out.push_back(check_convexity(*ctx));
        out.push_back(check_triangle_bound(*ctx, quad));
        out.push_back(check_w_growth(*ctx));

        for (double tau : grid.taus) {
          out.push_back(check_ratio_bound_gg1(*ctx, tau, quad));
          out.push_back(check_increasing_bound(*ctx, tau, quad));
          out.push_back(check_w_bracket(*ctx, tau));
          out.push_back(check_final_decay(*ctx, tau, quad));

          const CarliniDecomposition d = carlini_decomposition(*ctx, tau);
          const bool carlini_regime = ctx->in_regime() && grid.dim == Dimension::two;
          auto carlini_check = [&](const std::string& name, double lhs, double rhs, bool passed) {
            BoundCheck c;
            c.name = name;
            c.inputs = inputs_for(*ctx);
            c.inputs.tau = tau;
            c.lhs = lhs;
            c.rhs = rhs;
            c.margin = rhs - lhs;
            c.passed = passed;
            c.in_regime = carlini_regime;
            return c;
          };
          BoundCheck i1 = carlini_check("carlini_I1", d.I1, 1.0 / (n - 1.0), d.I1 < 1.0 / (n - 1.0));
          if (n > 2.0) {
            // I1 <= 1 always, so I1 < 1/(n-1) cannot hold once n > 2.
            i1.in_regime = false;
            i1.note = "bound stated for I1 does not hold for n > 2: report only";
          }
          out.push_back(std::move(i1));
          out.push_back(carlini_check("carlini_I3", d.I3_empirical, 2.0, d.I3_empirical < 2.0));
          out.push_back(carlini_check("carlini_delta", 0.0, d.delta, d.delta > 0.0));
          out.push_back(carlini_check("carlini_reconstruction", d.reconstruction_error, 1e-10,
                                      d.reconstruction_error <= 1e-10));
        }
      },
      threads);

  std::vector<BoundCheck> all;
  for (auto& b : blocks) {
    for (auto& c : b) all.push_back(std::move(c));
  }
  return all;
}

}  // namespace surface_modes
