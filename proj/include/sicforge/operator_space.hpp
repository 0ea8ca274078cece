#pragma once

// Hilbert-Schmidt geometry of operator sets.
//
// For n positive semi-definite operators A_i with tr(A_i^2) = 1, the defect
//
//   K_t = sum_{i != j} tr(A_i A_j)^t        (ordered pairs, real t >= 1)
//
// measures how far the set is from orthonormal. When n = d^2 it is bounded
// below by d^2 (d-1) / (d+1)^(t-1), with equality exactly for SIC sets.

#include "sicforge/core.hpp"

#include <optional>
#include <vector>

namespace sicforge {

/// Tolerances accepted by OperatorSet validation.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdFloor = -1e-10;
inline constexpr double kUnitHsNormTol = 1e-10;

/// Validated list of PSD operators with unit Hilbert-Schmidt norm.
class OperatorSet {
public:
  OperatorSet(Dim d, std::vector<ComplexMatrix> ops);

  /// Rank-1 projectors of the given unit vectors.
  static OperatorSet from_vectors(std::span<const StateVector> vectors);

  Dim dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return ops_.size(); }
  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
  const ComplexMatrix& operator[](std::size_t i) const { return ops_[i]; }

private:
  Dim d_;
  std::vector<ComplexMatrix> ops_;
};

struct KtReport {
  double t = 1.0;
  double value = 0.0;
  std::optional<double> lower_bound;  // present only when n = d^2
  std::optional<double> gap;          // value - lower_bound
};

/// tr(A^dagger B)
cd hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

KtReport kt_measure(const OperatorSet& set, double t);

/// d^2 (d-1) / (d+1)^(t-1)
double kt_lower_bound(Dim d, double t);

/// Second frame potential, sum_{i,j} |<psi_i|psi_j>|^4 including i = j.
double frame_potential(std::span<const StateVector> vectors);

/// Frame-potential minimum 2 d^3 / (d+1) over d^2 unit vectors.
double frame_potential_bound(Dim d);

struct QuasiOnbCertificate {
  double projector_deviation = 0.0;     // max_i max(‖A_i^2 - A_i‖_max, |tr A_i - 1|)
  double overlap_deviation = 0.0;       // max_{i != j} |tr(A_i A_j) - 1/(d+1)|
  double completeness_deviation = 0.0;  // ‖sum_i A_i - d I‖_max
  double tol = 0.0;
  bool passed = false;
};

/// Requires n = d^2.
QuasiOnbCertificate quasi_onb_certify(const OperatorSet& set, double tol);

}  // namespace sicforge
