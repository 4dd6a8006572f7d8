#pragma once

#include <stdexcept>
#include <string>

namespace surface_modes {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its stated accuracy. Indicates an
/// evaluation problem rather than a mathematical fact.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The characteristic function has equal signs at both ends of the
/// eigenvalue bracket, so no root is certified there.
class NoSignChange : public std::runtime_error {
 public:
  NoSignChange(int m, int s0)
      : std::runtime_error("no sign change of the characteristic function for m=" +
                           std::to_string(m) + ", s0=" + std::to_string(s0)),
        m_(m),
        s0_(s0) {}
  int m() const { return m_; }
  int s0() const { return s0_; }

 private:
  int m_;
  int s0_;
};

/// J_nu(k) vanishes at the eigenvalue, so the coefficient relation between
/// the two fields is singular.
class DegenerateBoundary : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace surface_modes
