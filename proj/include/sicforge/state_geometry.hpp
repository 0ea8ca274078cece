#pragma once

// Quantum states in SIC-probability coordinates.
//
// Given a SIC {Pi_i}, a state rho maps to p(i) = tr(rho Pi_i) / d and back via
//
//   rho = sum_i ((d+1) p(i) - 1/d) Pi_i.
//
// Every Hermitian unit-trace operator has such an expansion; positivity is
// not guaranteed for an arbitrary probability vector. Pure states are cut
// out by two conditions:
//
//   sum_i p(i)^2                 = 2 / (d (d+1))
//   sum_ijk c_ijk p(i) p(j) p(k) = (d+7) / (d+1)^3,   c_ijk = Re tr(Pi_i Pi_j Pi_k)

#include "sicforge/core.hpp"
#include "sicforge/sic_verify.hpp"

#include <vector>

namespace sicforge {

inline constexpr double kPurityTol = 1e-9;
inline constexpr std::size_t kMaxTensorDim = 12;

/// Hermitian, unit trace, positive semi-definite.
class DensityMatrix {
public:
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix maximally_mixed(Dim d);
  static DensityMatrix pure(const StateVector& psi);

  Dim dim() const noexcept { return Dim(static_cast<int>(m_.rows())); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

private:
  ComplexMatrix m_;
};

/// Length-d^2 probability vector.
class ProbVector {
public:
  ProbVector(Dim d, std::vector<double> p);

  static ProbVector uniform(Dim d);

  Dim dim() const noexcept { return d_; }
  const std::vector<double>& values() const noexcept { return p_; }
  double operator[](std::size_t i) const { return p_[i]; }
  std::size_t size() const noexcept { return p_.size(); }

private:
  Dim d_;
  std::vector<double> p_;
};

/// Dense d^2 x d^2 x d^2 tensor of c_ijk.
class StructureTensor {
public:
  StructureTensor(Dim d, std::vector<double> c);

  Dim dim() const noexcept { return d_; }
  std::size_t n() const noexcept { return d_.squared(); }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n() + j) * n() + k]; }
  const std::vector<double>& data() const noexcept { return c_; }

private:
  Dim d_;
  std::vector<double> c_;
};

struct ReconstructedOperator {
  ComplexMatrix matrix;  // Hermitian, unit trace
  double min_eigenvalue = 0.0;
  bool physical = false;  // min_eigenvalue >= -1e-10
};

/// Unchecked coordinates tr(X Pi_i)/d of any operator X.
std::vector<double> sic_coordinates(const ComplexMatrix& x, const SicSet& sic);

/// Requires a certified SIC of matching dimension.
ProbVector sic_probabilities(const DensityMatrix& rho, const SicSet& sic);

/// Unchecked inverse map on raw coordinates.
ComplexMatrix expand_in_sic(std::span<const double> p, const SicSet& sic);

ReconstructedOperator reconstruct_density(const ProbVector& p, const SicSet& sic);

/// |sum_i p(i)^2 - 2/(d(d+1))|
double purity_quadratic_residual(const ProbVector& p);

/// Rejects d > 12 (d^6 entries) unless allow_large is set.
StructureTensor structure_coefficients(const SicSet& sic, bool allow_large = false);

/// |sum_ijk c_ijk p(i) p(j) p(k) - (d+7)/(d+1)^3|
double purity_cubic_residual(const ProbVector& p, const StructureTensor& c);

bool is_pure_probability_vector(const ProbVector& p, const StructureTensor& c, double tol = kPurityTol);

}  // namespace sicforge
