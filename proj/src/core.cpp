#include "sicforge/core.hpp"

#include <cmath>

namespace sicforge {

StateVector::StateVector(ComplexVector v) : v_(std::move(v)) {
  if (v_.size() < 2) {
    throw std::invalid_argument("state vector needs at least 2 components");
  }
  const double n2 = v_.squaredNorm();
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("state vector is not unit norm (|psi|^2 = " + std::to_string(n2) + ")");
  }
}

StateVector StateVector::normalized(const ComplexVector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  return StateVector(v / n);
}

StateVector StateVector::basis(Dim d, int j) {
  ComplexVector v = ComplexVector::Zero(d.value());
  v(mod(j, d.value())) = 1.0;
  return StateVector(std::move(v));
}

bool is_prime(int n) {
  if (n < 2) {
    return false;
  }
  for (int k = 2; k * k <= n; ++k) {
    if (n % k == 0) {
      return false;
    }
  }
  return true;
}

}  // namespace sicforge
