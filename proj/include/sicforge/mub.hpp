#pragma once

// Complete sets of mutually unbiased bases in prime dimension, and the
// per-basis purity profile of a state measured in them.
//
// Basis 0 is the standard basis (eigenbasis of Z); basis a+1 is the
// eigenbasis of X Z^a for a = 0..d-1. The eigenvectors of X Z^a have the
// closed form
//
//   v_m = lambda^(-m) w^(a m (m-1) / 2) / sqrt(d),  lambda^d = w^(a d (d-1) / 2),
//
// so every vector has a real positive first component. Within a basis the
// vectors are ordered by arg(lambda) in [0, 2 pi).

#include "sicforge/core.hpp"

#include <vector>

namespace sicforge {

inline constexpr double kUncertaintyTol = 1e-8;

using Basis = std::vector<ComplexVector>;

class MubSet {
public:
  /// Checks shapes and that each basis is orthonormal to 1e-12. Unbiasedness
  /// is measured by unbiasedness_residual, not enforced here.
  MubSet(Dim d, std::vector<Basis> bases);

  Dim dim() const noexcept { return d_; }
  std::size_t num_bases() const noexcept { return bases_.size(); }
  const std::vector<Basis>& bases() const noexcept { return bases_; }
  const ComplexVector& vector(std::size_t b, std::size_t k) const { return bases_.at(b).at(k); }
  /// Eigenvalues matching each vector; empty for the standard basis or when
  /// constructed from raw bases.
  const std::vector<std::vector<cd>>& eigenvalues() const noexcept { return eigenvalues_; }

private:
  friend MubSet build_mubs(Dim d);
  Dim d_;
  std::vector<Basis> bases_;
  std::vector<std::vector<cd>> eigenvalues_;
};

/// Throws std::invalid_argument("prime dimension required") for composite d.
MubSet build_mubs(Dim d);

/// max over b != b', k, k' of | |<e_bk|e_b'k'>|^2 - 1/d |
double unbiasedness_residual(const MubSet& mubs);

struct UncertaintyProfile {
  std::vector<double> per_basis;                   // sum_k p(b,k)^2
  std::vector<std::vector<double>> probabilities;  // p(b,k) = |<e_bk|psi>|^2
};

UncertaintyProfile uncertainty_profile(const StateVector& psi, const MubSet& mubs);

/// True iff every per-basis value is 2/(d+1) within tol.
bool is_minimum_uncertainty(const StateVector& psi, const MubSet& mubs, double tol = kUncertaintyTol);
bool is_minimum_uncertainty(const UncertaintyProfile& profile, Dim d, double tol = kUncertaintyTol);

}  // namespace sicforge
