#pragma once

#include <limits>
#include <string>
#include <vector>

#include "surface_modes/eigenmodes.hpp"
#include "surface_modes/localization.hpp"

namespace surface_modes {

/// Parameters a check was evaluated at. Unused entries stay NaN / 0.
struct CheckInputs {
  double n = std::numeric_limits<double>::quiet_NaN();
  int dim = 0;
  int s0 = 0;
  int m = 0;
  double tau = std::numeric_limits<double>::quiet_NaN();
  double x = std::numeric_limits<double>::quiet_NaN();
};

/// One certified inequality. passed reflects the stated direction; checks
/// with in_regime == false are reported but never count as failures.
struct BoundCheck {
  std::string name;
  CheckInputs inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool passed = false;
  bool in_regime = true;
  std::string note;
};

/// Factorization |J_m(k tau) / J_m(k)| = I1 * I2 * I3 from the Carlini
/// main term, with I3 measured as the remainder.
struct CarliniDecomposition {
  double I1 = 0.0;
  double I2 = 0.0;
  double I3_empirical = 0.0;
  double delta = 0.0;  // 1 - phi(k tau / m) / phi(k / m)
  double bessel_ratio = 0.0;            // |J_m(k tau) / J_m(k)|
  double reconstruction_error = 0.0;    // |I1 I2 I3 / bessel_ratio - 1|
  int m = 0;
  double tau = 0.0;
  double n = 0.0;
  double k = 0.0;
};

/// phi(x) = x e^{sqrt(1-x^2)} / (1 + sqrt(1-x^2)) on (0, 1).
double carlini_phi(double x);

/// Everything the per-mode checks share: the eigenvalue, its pair and the
/// empirical m0 that decides whether m is in the asymptotic regime.
struct ModeContext {
  Medium medium;
  ModeIndex mode;
  TransmissionEigenvalue eigen;
  EigenmodePair pair;
  int m0 = 0;
  bool in_regime() const { return mode.m > m0; }
};

/// Requires n > 1. Throws NoSignChange when no eigenvalue is certified.
ModeContext make_context(double n, int s0, int m, Dimension dim, const SolverOptions& solver = {});

/// j_{nu,s0} / n <= nu.
BoundCheck check_lemma1(double n, int s0, int m, Dimension dim = Dimension::two);
/// f_nu changes sign across (j_{nu,s0}/n, j_{nu,s0+1}/n).
BoundCheck check_sign_change(double n, int s0, int m, Dimension dim = Dimension::two);

/// J'_nu(x)/J_nu(x) against the explicit upper bound valid for
/// 0 < x < sqrt((nu+1)(nu+3)). Half-integer orders are report-only.
BoundCheck check_krasikov(Order order, double x);
inline BoundCheck check_krasikov(int m, double x) { return check_krasikov(Order::integer(m), x); }

/// ratio_v^2 <= 36 n m^4 tau^2 (J_nu(k tau) / J_nu(k))^2.
BoundCheck check_ratio_bound_gg1(const ModeContext& ctx, double tau, const QuadratureOptions& quad = {});
BoundCheck check_ratio_bound_gg1(double n, int s0, int m, double tau, Dimension dim = Dimension::two);

CarliniDecomposition carlini_decomposition(const ModeContext& ctx, double tau);
CarliniDecomposition carlini_decomposition(double n, int s0, int m, double tau);

/// ratio_v^2 <= 144 n/(n-1)^2 m^4 tau^2 (1 - delta)^{2 nu}. Report-only in 3D.
BoundCheck check_final_decay(const ModeContext& ctx, double tau, const QuadratureOptions& quad = {});
BoundCheck check_final_decay(double n, int s0, int m, double tau);

/// n k tau < j'_{nu,1}: the scaled argument of w stays below the first
/// derivative zero.
BoundCheck check_w_bracket(const ModeContext& ctx, double tau);
BoundCheck check_w_bracket(double n, int s0, int m, double tau, Dimension dim = Dimension::two);

/// n k > m (1 + 2 ((s0+1)/m)^{2/3}). Report-only: it does not hold for the
/// computed eigenvalues.
BoundCheck check_w_growth(const ModeContext& ctx);

/// Chains m <= j'_{m,1} < j_{m,1} < j'_{m,2} < ... and the sign alternation
/// J_{m-1}(j_{m,s}) J_{m-1}(j_{m,s+1}) < 0, each link with margin >= 1e-9.
std::vector<BoundCheck> check_interlacing(int m_max, int s_max);

/// 1/n < k/m < (1+n)/(2n). In regime once m > m0 and the bracket end
/// j_{nu,s0+1}/n is itself below (1+n) nu / (2n).
BoundCheck check_k_window(const ModeContext& ctx);

/// Second differences of g(r) = r J_nu^2(k r) on a 1e-3 grid of [0, 1]
/// are >= -1e-8 max|g|.
BoundCheck check_convexity(const ModeContext& ctx);

/// int_0^1 r J^2(k r) dr >= (1/2) J^3(k) / (J(k) + 2k J'(k)).
BoundCheck check_triangle_bound(const ModeContext& ctx, const QuadratureOptions& quad = {});

/// int_0^tau r J^2(k r) dr <= tau^2 J^2(k tau).
BoundCheck check_increasing_bound(const ModeContext& ctx, double tau, const QuadratureOptions& quad = {});

struct VerifyGrid {
  std::vector<double> n_values;
  Dimension dim = Dimension::two;
  int s0 = 1;
  int m_min = 20;
  int m_max = 80;
  std::vector<double> taus;
};

/// All per-mode checks over the grid, ordered by (n, m, tau).
std::vector<BoundCheck> verify_grid(const VerifyGrid& grid, const SolverOptions& solver = {},
                                    const QuadratureOptions& quad = {}, unsigned threads = 0);

}  // namespace surface_modes
