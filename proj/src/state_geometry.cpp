#include "sicforge/state_geometry.hpp"

#include "sicforge/operator_space.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>

namespace sicforge {

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2) {
    throw std::invalid_argument("density matrix must be square with side >= 2");
  }
  if (hermiticity_defect(m_) > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - 1.0) > 1e-12) {
    throw std::invalid_argument("density matrix does not have unit trace");
  }
  const ComplexMatrix h = (m_ + m_.adjoint()) / 2.0;
  if (Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues()(0) < kPsdFloor) {
    throw std::invalid_argument("density matrix is not positive semi-definite");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Dim d) {
  return DensityMatrix(identity(d) / static_cast<double>(d.value()));
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  ComplexMatrix m = projector(psi.components());
  // exact Hermiticity
  return DensityMatrix((m + m.adjoint()) / 2.0);
}

ProbVector::ProbVector(Dim d, std::vector<double> p) : d_(d), p_(std::move(p)) {
  if (p_.size() != d.squared()) {
    throw std::invalid_argument("probability vector must have d^2 = " + std::to_string(d.squared()) + " entries");
  }
  for (double x : p_) {
    if (!std::isfinite(x) || x < -1e-12) {
      throw std::invalid_argument("probability vector has a negative or non-finite entry");
    }
  }
  if (std::abs(pairwise_sum(p_) - 1.0) > 1e-10) {
    throw std::invalid_argument("probabilities do not sum to 1");
  }
}

ProbVector ProbVector::uniform(Dim d) {
  return ProbVector(d, std::vector<double>(d.squared(), 1.0 / static_cast<double>(d.squared())));
}

StructureTensor::StructureTensor(Dim d, std::vector<double> c) : d_(d), c_(std::move(c)) {
  if (c_.size() != n() * n() * n()) {
    throw std::invalid_argument("structure tensor has the wrong number of entries");
  }
}

namespace {

void require_certified(const SicSet& sic, Dim d) {
  if (!sic.certified) {
    throw std::invalid_argument("SIC set is not certified");
  }
  if (sic.dim() != d) {
    throw std::invalid_argument("dimension mismatch between state and SIC set");
  }
}

}  // namespace

std::vector<double> sic_coordinates(const ComplexMatrix& x, const SicSet& sic) {
  const double d = sic.dim().value();
  std::vector<double> p;
  p.reserve(sic.size());
  for (const auto& v : sic.vectors) {
    // tr(X |v><v|) = <v|X|v>
    p.push_back(v.components().dot(x * v.components()).real() / d);
  }
  return p;
}

ProbVector sic_probabilities(const DensityMatrix& rho, const SicSet& sic) {
  require_certified(sic, rho.dim());
  return ProbVector(rho.dim(), sic_coordinates(rho.matrix(), sic));
}

ComplexMatrix expand_in_sic(std::span<const double> p, const SicSet& sic) {
  const Dim d = sic.dim();
  if (p.size() != sic.size()) {
    throw std::invalid_argument("coordinate vector length does not match SIC set");
  }
  const double dd = d.value();
  ComplexMatrix rho = ComplexMatrix::Zero(d.value(), d.value());
  for (std::size_t i = 0; i < p.size(); ++i) {
    rho += ((dd + 1.0) * p[i] - 1.0 / dd) * sic.projectors[i];
  }
  return (rho + rho.adjoint()) / 2.0;
}

ReconstructedOperator reconstruct_density(const ProbVector& p, const SicSet& sic) {
  require_certified(sic, p.dim());
  ReconstructedOperator out;
  out.matrix = expand_in_sic(p.values(), sic);
  out.min_eigenvalue =
      Eigen::SelfAdjointEigenSolver<ComplexMatrix>(out.matrix, Eigen::EigenvaluesOnly).eigenvalues()(0);
  out.physical = out.min_eigenvalue >= kPsdFloor;
  return out;
}

double purity_quadratic_residual(const ProbVector& p) {
  const double d = p.dim().value();
  std::vector<double> sq(p.size());
  std::transform(p.values().begin(), p.values().end(), sq.begin(), [](double x) { return x * x; });
  return std::abs(pairwise_sum(sq) - 2.0 / (d * (d + 1.0)));
}

StructureTensor structure_coefficients(const SicSet& sic, bool allow_large) {
  const Dim d = sic.dim();
  if (!sic.certified) {
    throw std::invalid_argument("SIC set is not certified");
  }
  if (d.size() > kMaxTensorDim && !allow_large) {
    throw std::invalid_argument("structure tensor for d > 12 needs an explicit override (d^6 entries)");
  }
  const std::size_t n = sic.size();
  // c_ijk = Re(<i|j><j|k><k|i>)
  Eigen::MatrixXcd gram(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          sic.vectors[i].components().dot(sic.vectors[j].components());
    }
  }
  std::vector<double> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const cd gij = gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      for (std::size_t k = 0; k < n; ++k) {
        const cd prod = gij * gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) *
                        gram(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
        c[(i * n + j) * n + k] = prod.real();
      }
    }
  }
  return StructureTensor(d, std::move(c));
}

double purity_cubic_residual(const ProbVector& p, const StructureTensor& c) {
  if (p.dim() != c.dim()) {
    throw std::invalid_argument("dimension mismatch between probabilities and structure tensor");
  }
  const std::size_t n = c.n();
  std::vector<double> outer(n);
  std::vector<double> inner(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        acc += c(i, j, k) * p[k];
      }
      inner[j] = acc * p[j];
    }
    outer[i] = pairwise_sum(inner) * p[i];
  }
  const double d = p.dim().value();
  return std::abs(pairwise_sum(outer) - (d + 7.0) / std::pow(d + 1.0, 3));
}

bool is_pure_probability_vector(const ProbVector& p, const StructureTensor& c, double tol) {
  return purity_quadratic_residual(p) <= tol && purity_cubic_residual(p, c) <= tol;
}

}  // namespace sicforge
