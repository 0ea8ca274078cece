#include "sicforge/mub.hpp"

#include "sicforge/wh_group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace sicforge {

MubSet::MubSet(Dim d, std::vector<Basis> bases) : d_(d), bases_(std::move(bases)) {
  if (bases_.empty()) {
    throw std::invalid_argument("MUB set has no bases");
  }
  for (std::size_t b = 0; b < bases_.size(); ++b) {
    const Basis& basis = bases_[b];
    if (basis.size() != d.size()) {
      throw std::invalid_argument("basis " + std::to_string(b) + " does not have d vectors");
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k].size() != d.value()) {
        throw std::invalid_argument("basis " + std::to_string(b) + " has a vector of the wrong length");
      }
      for (std::size_t k2 = 0; k2 <= k; ++k2) {
        const double expected = k == k2 ? 1.0 : 0.0;
        if (std::abs(basis[k2].dot(basis[k]) - expected) > 1e-12) {
          throw std::invalid_argument("basis " + std::to_string(b) + " is not orthonormal");
        }
      }
    }
  }
}

MubSet build_mubs(Dim d) {
  const int n = d.value();
  if (!is_prime(n)) {
    throw std::invalid_argument("prime dimension required (got " + std::to_string(n) + ")");
  }
  const PhaseConstants pc(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  const long long n2 = static_cast<long long>(n) * n;

  std::vector<Basis> bases;
  std::vector<std::vector<cd>> eigenvalues;
  bases.reserve(d.size() + 1);

  Basis standard;
  std::vector<cd> clock_eigs;
  for (int k = 0; k < n; ++k) {
    standard.push_back(StateVector::basis(d, k).components());
    clock_eigs.push_back(pc.omega_pow(k));
  }
  bases.push_back(std::move(standard));
  eigenvalues.push_back(std::move(clock_eigs));

  for (int a = 0; a < n; ++a) {
    // lambda^d = w^c with c = a d (d-1)/2; the d roots are
    // lambda_s = exp(2 pi i e_s / d^2), e_s = (c + s d) mod d^2, sorted by e_s
    const long long c = static_cast<long long>(a) * n * (n - 1) / 2;
    std::vector<long long> exps;
    for (int s = 0; s < n; ++s) {
      exps.push_back(((c + static_cast<long long>(s) * n) % n2 + n2) % n2);
    }
    std::sort(exps.begin(), exps.end());

    Basis basis;
    std::vector<cd> eigs;
    for (long long e : exps) {
      const cd lambda = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n2));
      ComplexVector v(n);
      for (int m = 0; m < n; ++m) {
        // lambda^(-m), reduced through the exact exponent e*m mod d^2
        const long long lam_exp = (static_cast<long long>(m) * e) % n2;
        const cd lam_inv = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(lam_exp) / static_cast<double>(n2));
        v(m) = norm * lam_inv * pc.omega_pow(static_cast<long long>(a) * m * (m - 1) / 2);
      }
      basis.push_back(std::move(v));
      eigs.push_back(lambda);
    }
    bases.push_back(std::move(basis));
    eigenvalues.push_back(std::move(eigs));
  }

  MubSet set(d, std::move(bases));
  set.eigenvalues_ = std::move(eigenvalues);
  return set;
}

double unbiasedness_residual(const MubSet& mubs) {
  const double target = 1.0 / mubs.dim().value();
  double worst = 0.0;
  const auto& bases = mubs.bases();
  for (std::size_t b = 0; b < bases.size(); ++b) {
    for (std::size_t b2 = b + 1; b2 < bases.size(); ++b2) {
      for (const auto& u : bases[b]) {
        for (const auto& v : bases[b2]) {
          worst = std::max(worst, std::abs(std::norm(u.dot(v)) - target));
        }
      }
    }
  }
  return worst;
}

UncertaintyProfile uncertainty_profile(const StateVector& psi, const MubSet& mubs) {
  if (psi.dim() != mubs.dim()) {
    throw std::invalid_argument("uncertainty_profile: dimension mismatch");
  }
  UncertaintyProfile out;
  for (const Basis& basis : mubs.bases()) {
    std::vector<double> probs;
    std::vector<double> squares;
    for (const auto& e : basis) {
      const double p = std::norm(e.dot(psi.components()));
      probs.push_back(p);
      squares.push_back(p * p);
    }
    out.per_basis.push_back(pairwise_sum(squares));
    out.probabilities.push_back(std::move(probs));
  }
  return out;
}

bool is_minimum_uncertainty(const UncertaintyProfile& profile, Dim d, double tol) {
  const double target = 2.0 / (d.value() + 1);
  return !profile.per_basis.empty() &&
         std::all_of(profile.per_basis.begin(), profile.per_basis.end(),
                     [&](double x) { return std::abs(x - target) <= tol; });
}

bool is_minimum_uncertainty(const StateVector& psi, const MubSet& mubs, double tol) {
  return is_minimum_uncertainty(uncertainty_profile(psi, mubs), psi.dim(), tol);
}

}  // namespace sicforge
