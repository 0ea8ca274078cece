#pragma once

// Shared value types: dimensions, group indices, dense complex carriers and
// normalized state vectors. Everything here is an immutable value.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sicforge {

using cd = std::complex<double>;

/// Dense row-major d x d complex matrix.
using ComplexMatrix = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;

/// Hilbert-space dimension, always >= 2.
class Dim {
public:
  explicit Dim(int d) : d_(d) {
    if (d < 2) {
      throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(d));
    }
  }

  int value() const noexcept { return d_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(d_); }
  /// Number of group elements / SIC elements, d^2.
  std::size_t squared() const noexcept { return size() * size(); }

  friend bool operator==(Dim, Dim) = default;

private:
  int d_;
};

/// Reduce an arbitrary integer into [0, d).
inline int mod(long long x, int d) {
  long long r = x % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

/// Element r = (r1, r2) of Z_d x Z_d, stored canonically in [0, d).
struct GroupIndex {
  int r1 = 0;
  int r2 = 0;

  GroupIndex() = default;
  GroupIndex(Dim d, long long a, long long b) : r1(mod(a, d.value())), r2(mod(b, d.value())) {}

  bool is_zero() const noexcept { return r1 == 0 && r2 == 0; }
  /// Flat position r1 * d + r2; the ordering used for SIC elements.
  std::size_t flat(Dim d) const noexcept {
    return static_cast<std::size_t>(r1) * d.size() + static_cast<std::size_t>(r2);
  }
  static GroupIndex from_flat(Dim d, std::size_t i) {
    return GroupIndex(d, static_cast<long long>(i / d.size()), static_cast<long long>(i % d.size()));
  }

  friend bool operator==(const GroupIndex&, const GroupIndex&) = default;
};

/// Tolerance on |‖ψ‖² - 1| accepted by StateVector.
inline constexpr double kUnitNormTol = 1e-12;

/// Unit-norm complex d-vector.
class StateVector {
public:
  /// Validates ‖v‖² = 1 within kUnitNormTol.
  explicit StateVector(ComplexVector v);

  /// Rescales a nonzero vector to unit norm.
  static StateVector normalized(const ComplexVector& v);
  static StateVector basis(Dim d, int j);

  Dim dim() const noexcept { return Dim(static_cast<int>(v_.size())); }
  const ComplexVector& components() const noexcept { return v_; }
  cd operator[](std::size_t j) const { return v_(static_cast<Eigen::Index>(j)); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(v_.size()); }

  StateVector with_phase(cd unit_scalar) const { return normalized(v_ * unit_scalar); }

private:
  ComplexVector v_;
};

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline ComplexMatrix identity(Dim d) {
  return ComplexMatrix::Identity(d.value(), d.value());
}

/// Rank-1 projector |v><v|.
inline ComplexMatrix projector(const ComplexVector& v) {
  return v * v.adjoint();
}

/// Max entrywise deviation from Hermiticity.
inline double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

/// Cascade summation: the reduction tree depends only on the input length,
/// so results do not vary with how the terms were produced.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.empty()) {
    return T{};
  }
  if (xs.size() <= 8) {
    T acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) {
      acc += xs[i];
    }
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs));
}

bool is_prime(int n);

}  // namespace sicforge
