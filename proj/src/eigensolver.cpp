#include "surface_modes/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include "surface_modes/parallel.hpp"

namespace surface_modes {

Medium::Medium(double n, Dimension dim) : n_(n), dim_(dim) {
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("contrast must be positive and finite");
  if (n == 1.0) throw DomainError("contrast must differ from 1");
  if (dim != Dimension::two && dim != Dimension::three) throw DomainError("dimension must be 2 or 3");
}

ModeIndex::ModeIndex(int m_, int s0_) : m(m_), s0(s0_) {
  if (m < 1) throw DomainError("angular order m must be >= 1");
  if (s0 < 1) throw DomainError("zero index s0 must be >= 1");
}

LogScaledValue char_fn_log(double k, const Medium& medium, int m) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("char_fn: k must be positive");
  if (m < 1) throw DomainError("char_fn: m must be >= 1");
  const double n = medium.contrast();
  const Order order = medium.order_for(m);
  const BesselNeighbours inner = besselj_neighbours_log(order, k);
  const BesselNeighbours outer = besselj_neighbours_log(order, k * n);
  const LogScaledValue first = inner.lower * outer.value;
  const LogScaledValue second = (inner.value * outer.lower).scaled(n);
  return first - second;
}

double char_fn(double k, const Medium& medium, int m) { return char_fn_log(k, medium, m).value(); }

Interval eigen_bracket(const Medium& medium, const ModeIndex& mode) {
  const double n = medium.contrast();
  if (!(n > 1.0)) throw DomainError("eigen_bracket: contrast must exceed 1 (use the dual medium)");
  const Order order = medium.order_for(mode.m);
  return {bessel_zero(order, mode.s0).value / n, bessel_zero(order, mode.s0 + 1).value / n};
}

namespace {

struct Sample {
  double x;
  double f;  // f_nu(x) / scale
};

TransmissionEigenvalue solve_direct(const Medium& medium, const ModeIndex& mode, const SolverOptions& options) {
  const Interval bracket = eigen_bracket(medium, mode);
  const LogScaledValue f_lo = char_fn_log(bracket.lo, medium, mode.m);
  const LogScaledValue f_hi = char_fn_log(bracket.hi, medium, mode.m);
  if (f_lo.sign * f_hi.sign >= 0) throw NoSignChange(mode.m, mode.s0);

  const LogScaledValue scale =
      f_lo.log_magnitude >= f_hi.log_magnitude ? f_lo.abs() : f_hi.abs();
  auto relative = [&](double x) { return (char_fn_log(x, medium, mode.m) / scale).value(); };

  Sample lo{bracket.lo, f_lo.sign * std::exp(f_lo.log_magnitude - scale.log_magnitude)};
  Sample hi{bracket.hi, f_hi.sign * std::exp(f_hi.log_magnitude - scale.log_magnitude)};
  Sample best = std::abs(lo.f) < std::abs(hi.f) ? lo : hi;
  bool have_interior = false;

  auto consider = [&](const Sample& s) {
    if (!bracket.contains_strictly(s.x)) return;
    if (!have_interior || std::abs(s.f) < std::abs(best.f)) {
      best = s;
      have_interior = true;
    }
  };
  auto split = [&](const Sample& s) {
    if (s.f == 0.0) {
      lo = hi = s;
    } else if ((s.f < 0) == (lo.f < 0)) {
      lo = s;
    } else {
      hi = s;
    }
  };

  while (hi.x - lo.x > options.bisection_width * lo.x) {
    const double mid = 0.5 * (lo.x + hi.x);
    if (mid <= lo.x || mid >= hi.x) break;
    const Sample s{mid, relative(mid)};
    consider(s);
    split(s);
    if (lo.x == hi.x) break;
  }
  for (int i = 0; i < options.secant_steps && lo.x < hi.x; ++i) {
    double x = hi.x - hi.f * (hi.x - lo.x) / (hi.f - lo.f);
    if (!(x > lo.x && x < hi.x)) x = 0.5 * (lo.x + hi.x);
    const Sample s{x, relative(x)};
    consider(s);
    split(s);
  }
  if (!have_interior) {
    const double mid = 0.5 * (lo.x + hi.x);
    best = {mid, relative(mid)};
  }

  // Sign sampling to flag further roots inside the bracket.
  int changes = 0;
  int previous = f_lo.sign;
  const int probes = std::max(options.probe_points, 0);
  for (int i = 1; i <= probes + 1; ++i) {
    const int sign = i <= probes
                         ? char_fn_log(bracket.lo + i * bracket.width() / (probes + 1), medium, mode.m).sign
                         : f_hi.sign;
    if (sign != 0 && sign != previous) {
      ++changes;
      previous = sign;
    }
  }

  TransmissionEigenvalue result;
  result.k = best.x;
  result.bracket = bracket;
  result.residual = std::abs(best.f);
  result.residual_scale = scale;
  result.medium = medium;
  result.mode = mode;
  result.probe_root_count = std::max(changes, 1);
  if (!(result.residual <= options.residual_tolerance)) {
    throw NumericalError("eigenvalue residual " + std::to_string(result.residual) +
                         " above tolerance for m=" + std::to_string(mode.m));
  }
  return result;
}

}  // namespace

TransmissionEigenvalue find_eigenvalue(const Medium& medium, const ModeIndex& mode, const SolverOptions& options) {
  if (medium.contrast() > 1.0) return solve_direct(medium, mode, options);
  const TransmissionEigenvalue dual = solve_direct(medium.dual(), mode, options);
  return map_inverse_contrast(medium, dual);
}

TransmissionEigenvalue map_inverse_contrast(const Medium& medium, const TransmissionEigenvalue& dual) {
  const double n = medium.contrast();
  if (!(n < 1.0)) throw DomainError("map_inverse_contrast: contrast must be below 1");
  if (dual.medium.dim() != medium.dim() || std::abs(dual.medium.contrast() * n - 1.0) > 1e-14) {
    throw DomainError("map_inverse_contrast: eigenvalue was not computed for the dual medium");
  }
  TransmissionEigenvalue out = dual;
  out.k = dual.k / n;
  out.bracket = dual.bracket.scaled(1.0 / n);
  out.medium = medium;
  out.roles_swapped = true;
  out.dual_k = dual.k;

  const LogScaledValue f_lo = char_fn_log(out.bracket.lo, medium, dual.mode.m);
  const LogScaledValue f_hi = char_fn_log(out.bracket.hi, medium, dual.mode.m);
  out.residual_scale = f_lo.log_magnitude >= f_hi.log_magnitude ? f_lo.abs() : f_hi.abs();
  out.residual = std::abs((char_fn_log(out.k, medium, dual.mode.m) / out.residual_scale).value());
  return out;
}

ScanResult scan(const Medium& medium, int s0, int m_min, int m_max, const SolverOptions& options,
                unsigned threads) {
  if (m_min < 1 || m_max < m_min) throw DomainError("scan: invalid m range");
  if (s0 < 1) throw DomainError("scan: s0 must be >= 1");
  const std::size_t count = static_cast<std::size_t>(m_max - m_min + 1);
  std::vector<std::optional<TransmissionEigenvalue>> found(count);
  std::vector<std::optional<ScanFailure>> failed(count);

  parallel_for(
      count,
      [&](std::size_t i) {
        const int m = m_min + static_cast<int>(i);
        try {
          found[i] = find_eigenvalue(medium, ModeIndex(m, s0), options);
        } catch (const NoSignChange& e) {
          failed[i] = ScanFailure{m, true, e.what()};
        } catch (const std::exception& e) {
          failed[i] = ScanFailure{m, false, e.what()};
        }
      },
      threads);

  ScanResult result;
  for (std::size_t i = 0; i < count; ++i) {
    if (found[i]) result.eigenvalues.push_back(*found[i]);
    if (failed[i]) result.failures.push_back(*failed[i]);
  }
  return result;
}

}  // namespace surface_modes
