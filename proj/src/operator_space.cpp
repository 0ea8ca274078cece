#include "sicforge/operator_space.hpp"

#include <algorithm>
#include <cmath>

namespace sicforge {

OperatorSet::OperatorSet(Dim d, std::vector<ComplexMatrix> ops) : d_(d), ops_(std::move(ops)) {
  if (ops_.empty()) {
    throw std::invalid_argument("operator set is empty");
  }
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const ComplexMatrix& a = ops_[i];
    const std::string where = "operator " + std::to_string(i) + ": ";
    if (a.rows() != d.value() || a.cols() != d.value()) {
      throw std::invalid_argument(where + "wrong shape");
    }
    if (hermiticity_defect(a) > kHermitianTol) {
      throw std::invalid_argument(where + "not Hermitian");
    }
    const ComplexMatrix h = (a + a.adjoint()) / 2.0;
    const double lowest = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
    if (lowest < kPsdFloor) {
      throw std::invalid_argument(where + "not positive semi-definite");
    }
    if (std::abs(a.squaredNorm() - 1.0) > kUnitHsNormTol) {
      throw std::invalid_argument(where + "tr(A^2) != 1");
    }
  }
}

OperatorSet OperatorSet::from_vectors(std::span<const StateVector> vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("operator set is empty");
  }
  const Dim d = vectors.front().dim();
  std::vector<ComplexMatrix> ops;
  ops.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.dim() != d) {
      throw std::invalid_argument("vectors have mismatched dimensions");
    }
    ops.push_back(projector(v.components()));
  }
  return OperatorSet(d, std::move(ops));
}

cd hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("hs_inner: dimension mismatch");
  }
  return a.conjugate().cwiseProduct(b).sum();
}

namespace {

// x^t via exp(t ln x), with x clamped at 0
double real_power(double x, double t) {
  if (x <= 0.0) {
    return 0.0;
  }
  return std::exp(t * std::log(x));
}

}  // namespace

KtReport kt_measure(const OperatorSet& set, double t) {
  if (!(t >= 1.0)) {
    throw std::invalid_argument("kt_measure: t must be >= 1");
  }
  const std::size_t n = set.size();
  std::vector<double> terms;
  terms.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        // both Hermitian, so tr(A_i A_j) = <A_i, A_j>_HS is real
        terms.push_back(real_power(hs_inner(set[i], set[j]).real(), t));
      }
    }
  }
  KtReport report;
  report.t = t;
  report.value = pairwise_sum(terms);
  if (n == set.dim().squared()) {
    report.lower_bound = kt_lower_bound(set.dim(), t);
    report.gap = report.value - *report.lower_bound;
  }
  return report;
}

double kt_lower_bound(Dim d, double t) {
  if (!(t >= 1.0)) {
    throw std::invalid_argument("kt_lower_bound: t must be >= 1");
  }
  const double dd = d.value();
  return dd * dd * (dd - 1.0) / std::pow(dd + 1.0, t - 1.0);
}

double frame_potential(std::span<const StateVector> vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("frame_potential: empty list");
  }
  const Dim d = vectors.front().dim();
  std::vector<double> terms;
  terms.reserve(vectors.size() * vectors.size());
  for (const auto& a : vectors) {
    if (a.dim() != d) {
      throw std::invalid_argument("frame_potential: dimension mismatch");
    }
    for (const auto& b : vectors) {
      const double o = std::norm(a.components().dot(b.components()));
      terms.push_back(o * o);
    }
  }
  return pairwise_sum(terms);
}

double frame_potential_bound(Dim d) {
  const double dd = d.value();
  return 2.0 * dd * dd * dd / (dd + 1.0);
}

QuasiOnbCertificate quasi_onb_certify(const OperatorSet& set, double tol) {
  const Dim d = set.dim();
  if (set.size() != d.squared()) {
    throw std::invalid_argument("quasi_onb_certify: need exactly d^2 operators, got " + std::to_string(set.size()));
  }
  QuasiOnbCertificate cert;
  cert.tol = tol;
  const double target = 1.0 / (d.value() + 1);
  ComplexMatrix total = ComplexMatrix::Zero(d.value(), d.value());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const ComplexMatrix& a = set[i];
    cert.projector_deviation = std::max({cert.projector_deviation, max_abs(a * a - a), std::abs(a.trace() - 1.0)});
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (i != j) {
        cert.overlap_deviation = std::max(cert.overlap_deviation, std::abs(hs_inner(a, set[j]).real() - target));
      }
    }
    total += a;
  }
  cert.completeness_deviation = max_abs(total - static_cast<double>(d.value()) * identity(d));
  cert.passed = cert.projector_deviation <= tol && cert.overlap_deviation <= tol && cert.completeness_deviation <= tol;
  return cert;
}

}  // namespace sicforge
