#pragma once

#include <complex>
#include <optional>

#include "surface_modes/eigensolver.hpp"

namespace surface_modes {

enum class Normalization { beta_one, alpha_one };

/// The two transmission fields of one angular mode.
/// w = alpha * R(kn r), v = beta * R(k r), where R is J_m in 2D and the
/// spherical Bessel function j_m in 3D.
enum class Field { w, v };

/// Eigenfunction pair (w_m, v_m) for a transmission eigenvalue. The
/// coefficients are held in log domain; their plain values may underflow.
struct EigenmodePair {
  TransmissionEigenvalue eigen;
  LogScaledValue alpha;
  LogScaledValue beta;
  Normalization normalization = Normalization::beta_one;

  double alpha_value() const { return alpha.value(); }
  double beta_value() const { return beta.value(); }
  /// Both coefficients multiplied by c > 0.
  EigenmodePair scaled(double c) const;
};

/// beta_one in 2D, alpha_one in 3D.
Normalization default_normalization(Dimension dim);

/// Coefficients from boundary matching:
///   2D: beta J_m(k) = alpha J_m(kn)
///   3D: beta = n^{-1/2} J_{m+1/2}(kn) / J_{m+1/2}(k) alpha
/// Throws DegenerateBoundary when |J_nu(k)| < 1e-13 |J'_nu(k)|.
EigenmodePair make_pair(const TransmissionEigenvalue& eigen,
                        std::optional<Normalization> normalization = std::nullopt);

/// Argument scale of the chosen field: kn for w, k for v.
double field_wavenumber(const EigenmodePair& pair, Field which);

/// Radial part without coefficient, R(s r) with s = field_wavenumber.
LogScaledValue radial_basis_log(Order order, Dimension dim, double argument);

LogScaledValue eval_radial_log(const EigenmodePair& pair, Field which, double r);
double eval_radial(const EigenmodePair& pair, Field which, double r);

/// Radial value times e^{i m theta}. 2D pairs only.
std::complex<double> eval_field_2d(const EigenmodePair& pair, Field which, double r, double theta);

struct BoundaryResidual {
  double value_gap = 0.0;       // |w(1) - v(1)| relative
  double derivative_gap = 0.0;  // |dw/dr(1) - dv/dr(1)| relative
};

BoundaryResidual boundary_residual(const EigenmodePair& pair);

}  // namespace surface_modes
