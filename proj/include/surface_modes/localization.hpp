#pragma once

#include <vector>

#include "surface_modes/eigenmodes.hpp"
#include "surface_modes/quadrature.hpp"

namespace surface_modes {

/// Interior-to-total L2 ratios of both fields over the sub-ball |x| < tau.
struct LocalizationReport {
  double tau = 0.0;
  double ratio_v = 0.0;  // ||v||_{tau} / ||v||_{1}
  double ratio_w = 0.0;
  LogScaledValue norm_v_full;  // squared norms over the unit ball
  LogScaledValue norm_w_full;
  ModeIndex mode;
  Medium medium{2.0, Dimension::two};
  double k = 0.0;
};

/// int_0^tau r^{d-1} R(s r)^2 dr for the coefficient-free radial part R
/// (J_nu in 2D, j_m in 3D). The integrand is rescaled by the largest
/// sampled |R| so the result keeps its relative accuracy when R
/// underflows; the scale is returned inside the log value.
LogScaledValue radial_moment_log(Order order, Dimension dim, double wavenumber, double tau,
                                 const QuadratureOptions& options = {});

/// Squared L2 norm of a field over |x| < tau. 2D includes the angular
/// factor 2 pi; 3D is per unit-normalized spherical harmonic.
LogScaledValue norm_sq(const EigenmodePair& pair, Field which, double tau, const QuadratureOptions& options = {});

/// ratio_psi = sqrt(norm_sq(psi, tau) / norm_sq(psi, 1)) for psi = w, v.
LocalizationReport localization_report(const EigenmodePair& pair, double tau,
                                       const QuadratureOptions& options = {});

struct ProfileRow {
  double r = 0.0;
  double abs_w = 0.0;  // |w(r)| / max |w|
  double abs_v = 0.0;  // |v(r)| / max |v|
};

/// Uniform samples r = 0, ..., 1 (samples >= 2), each field normalized to a
/// unit maximum over the sampled points.
std::vector<ProfileRow> radial_profile(const EigenmodePair& pair, int samples);

}  // namespace surface_modes
