#pragma once

#include <optional>
#include <string>
#include <vector>

#include "surface_modes/dimension.hpp"
#include "surface_modes/specfun.hpp"
#include "surface_modes/zeros.hpp"

namespace surface_modes {

/// Constant refractive contrast n inside the unit ball, and the dimension.
class Medium {
 public:
  /// Throws DomainError unless n > 0, n finite and n != 1.
  Medium(double n, Dimension dim);

  double contrast() const { return n_; }
  Dimension dim() const { return dim_; }
  Order order_for(int m) const { return surface_modes::order_for(dim_, m); }
  /// The medium with contrast 1/n in the same dimension.
  Medium dual() const { return Medium(1.0 / n_, dim_); }

  friend bool operator==(const Medium&, const Medium&) = default;

 private:
  double n_;
  Dimension dim_;
};

struct ModeIndex {
  int m = 1;   // angular order
  int s0 = 1;  // index of the Bessel zero opening the bracket

  ModeIndex() = default;
  ModeIndex(int m, int s0);

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// A computed transmission eigenvalue k in (j_{nu,s0}/n, j_{nu,s0+1}/n).
///
/// residual is |f_nu(k)| relative to residual_scale, the larger of |f_nu|
/// at the two bracket endpoints. For n < 1 the value is obtained from the
/// dual medium 1/n; roles_swapped is set and dual_k holds k * n.
struct TransmissionEigenvalue {
  double k = 0.0;
  Interval bracket;
  double residual = 0.0;
  LogScaledValue residual_scale;
  Medium medium{2.0, Dimension::two};
  ModeIndex mode;
  int probe_root_count = 1;
  bool roles_swapped = false;
  std::optional<double> dual_k;
};

struct SolverOptions {
  double bisection_width = 1e-12;  // relative to k
  int secant_steps = 2;
  double residual_tolerance = 1e-10;
  int probe_points = 64;
};

/// f_nu(k) = J_{nu-1}(k) J_nu(kn) - n J_nu(k) J_{nu-1}(kn), nu = m (2D) or
/// m + 1/2 (3D). Both products are formed in log domain so the sign is
/// right even when each term underflows.
LogScaledValue char_fn_log(double k, const Medium& medium, int m);
double char_fn(double k, const Medium& medium, int m);

/// (j_{nu,s0}/n, j_{nu,s0+1}/n). Requires n > 1.
Interval eigen_bracket(const Medium& medium, const ModeIndex& mode);

/// Bisection plus secant polish inside eigen_bracket. For n < 1 the root is
/// computed for 1/n and mapped back. Throws NoSignChange when the bracket
/// endpoints agree in sign and NumericalError when the residual tolerance
/// is missed.
TransmissionEigenvalue find_eigenvalue(const Medium& medium, const ModeIndex& mode,
                                       const SolverOptions& options = {});

/// Maps an eigenvalue of the dual medium 1/n back to the medium n < 1:
/// k = k_dual / n, with w and v exchanging roles.
TransmissionEigenvalue map_inverse_contrast(const Medium& medium, const TransmissionEigenvalue& dual);

struct ScanFailure {
  int m = 0;
  bool no_sign_change = false;
  std::string message;
};

struct ScanResult {
  std::vector<TransmissionEigenvalue> eigenvalues;  // ordered by m
  std::vector<ScanFailure> failures;                // ordered by m
};

/// find_eigenvalue over m_min..m_max inclusive. Per-m errors are collected
/// rather than thrown. threads = 0 selects the default worker count.
ScanResult scan(const Medium& medium, int s0, int m_min, int m_max,
                const SolverOptions& options = {}, unsigned threads = 0);

}  // namespace surface_modes
