#pragma once

// Certification of Weyl-Heisenberg fiducial vectors.
//
// A unit vector psi is a fiducial when its d^2 displaced copies D_r psi have
// pairwise overlap-squared 1/(d+1). Three equivalent forms are checked here:
//
//   Gram form     |<psi|D_r|psi>|^2 = 1/(d+1)                       (r != 0)
//   quartic form  sum_j psi_j psi*_(j+k) psi*_(j+l) psi_(j+k+l)
//                   = (delta_k0 + delta_l0) / (d+1)                  (all k, l)
//   Fourier link  (1/d) sum_r2 w^(k r2) |<psi|D_(r1,r2)|psi>|^2
//                   = sum_j psi_j psi*_(j+k) psi*_(j+r1) psi_(j+k+r1)
//
// The last line is an identity for every unit vector; it is what makes the
// first two forms equivalent. All evaluation is componentwise.

#include "sicforge/core.hpp"
#include "sicforge/wh_group.hpp"

#include <vector>

namespace sicforge {

/// Default residual tolerance for certification in double precision.
inline constexpr double kCertifyTol = 1e-10;

struct GramOverlaps {
  Dim dim;
  std::vector<cd> values;      // <psi|D_r|psi>, indexed by GroupIndex::flat
  std::vector<double> phases;  // arg of values[r]; 0 at r = 0 and where |values[r]| = 0

  cd at(GroupIndex r) const { return values.at(r.flat(dim)); }
};

GramOverlaps gram_overlaps(const PhaseConstants& pc, const StateVector& psi);
GramOverlaps gram_overlaps(const StateVector& psi);

/// max over r != 0 of | |<psi|D_r|psi>|^2 - 1/(d+1) |
double gram_residual(const StateVector& psi);

/// The quartic sum Q(k, l) = sum_j psi_j psi*_(j+k) psi*_(j+l) psi_(j+k+l).
cd quartic_sum(const ComplexVector& psi, int k, int l);

/// Target value (delta_k0 + delta_l0) / (d+1) of the quartic sum.
double quartic_target(Dim d, int k, int l);

/// max over (k, l) of |Q(k, l) - target(k, l)|
double quartic_residual(const StateVector& psi);

struct FtaValues {
  cd lhs;
  cd rhs;
};

/// Both sides of the Fourier identity at (k, r1).
FtaValues fta_check(const StateVector& psi, int k, int r1);

struct SicSet {
  StateVector fiducial;
  std::vector<StateVector> vectors;       // D_r psi, indexed by GroupIndex::flat
  std::vector<ComplexMatrix> projectors;  // |D_r psi><D_r psi|
  double gram_residual = 0.0;
  double quartic_residual = 0.0;
  double tol = kCertifyTol;
  bool certified = false;

  Dim dim() const noexcept { return fiducial.dim(); }
  std::size_t size() const noexcept { return projectors.size(); }
};

/// Builds all d^2 elements and records both residuals. Uncertified sets are
/// returned as-is with certified = false.
SicSet build_sic_set(const StateVector& psi, double tol = kCertifyTol);

}  // namespace sicforge
