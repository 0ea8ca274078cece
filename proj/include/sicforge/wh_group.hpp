#pragma once

// Weyl-Heisenberg clock, shift and displacement operators in dimension d.
//
//   Z|j> = w^j |j>,  X|j> = |j+1>,  D_r = t^(r1 r2) X^r1 Z^r2
//
// with w = exp(2 pi i / d) and t = -exp(i pi / d). t has order 2d when d is
// even, so t^(r1 r2) is always taken with the plain integer product r1 * r2.

#include "sicforge/core.hpp"

#include <vector>

namespace sicforge {

/// Root-of-unity tables for one dimension. Build once, reuse in inner loops.
class PhaseConstants {
public:
  explicit PhaseConstants(Dim d);

  Dim dim() const noexcept { return d_; }
  cd omega() const noexcept { return omega_pow_[1]; }
  cd tau() const noexcept { return tau_pow(1); }

  /// w^n for any integer n.
  cd omega_pow(long long n) const noexcept { return omega_pow_[static_cast<std::size_t>(mod(n, d_.value()))]; }

  /// t^n = (-1)^n exp(i pi n / d); n is never reduced mod d.
  cd tau_pow(long long n) const noexcept {
    const cd z = zeta_pow_[static_cast<std::size_t>(mod(n, 2 * d_.value()))];
    return (n % 2 == 0) ? z : -z;
  }

private:
  Dim d_;
  std::vector<cd> omega_pow_;  // w^j, j in [0, d)
  std::vector<cd> zeta_pow_;   // exp(i pi m / d), m in [0, 2d)
};

ComplexMatrix build_clock(Dim d);
ComplexMatrix build_shift(Dim d);

ComplexMatrix displacement(const PhaseConstants& pc, GroupIndex r);
inline ComplexMatrix displacement(Dim d, GroupIndex r) { return displacement(PhaseConstants(d), r); }

/// D_r psi in O(d): component j is t^(r1 r2) w^((j - r1) r2) psi_(j - r1).
ComplexVector displace(const PhaseConstants& pc, const ComplexVector& psi, GroupIndex r);
StateVector displace_state(const PhaseConstants& pc, const StateVector& psi, GroupIndex r);
inline StateVector displace_state(const StateVector& psi, GroupIndex r) {
  return displace_state(PhaseConstants(psi.dim()), psi, r);
}

/// All d^2 displacement operators, indexed by GroupIndex::flat.
class DisplacementTable {
public:
  explicit DisplacementTable(Dim d);

  Dim dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return ops_.size(); }
  const ComplexMatrix& at(GroupIndex r) const { return ops_.at(r.flat(d_)); }

private:
  Dim d_;
  std::vector<ComplexMatrix> ops_;
};

}  // namespace sicforge
