#include "sicforge/wh_group.hpp"

#include <cmath>
#include <numbers>

namespace sicforge {

PhaseConstants::PhaseConstants(Dim d) : d_(d) {
  const int n = d.value();
  omega_pow_.reserve(d.size());
  for (int j = 0; j < n; ++j) {
    omega_pow_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / n));
  }
  zeta_pow_.reserve(2 * d.size());
  for (int m = 0; m < 2 * n; ++m) {
    zeta_pow_.push_back(std::polar(1.0, std::numbers::pi * m / n));
  }
  // exact values where the table hits the real/imaginary axes
  omega_pow_[0] = zeta_pow_[0] = 1.0;
  zeta_pow_[static_cast<std::size_t>(n)] = -1.0;
  if (n % 2 == 0) {
    omega_pow_[d.size() / 2] = -1.0;
    zeta_pow_[d.size() / 2] = cd(0.0, 1.0);
    zeta_pow_[3 * d.size() / 2] = cd(0.0, -1.0);
  }
  if (n % 4 == 0) {
    omega_pow_[d.size() / 4] = cd(0.0, 1.0);
    omega_pow_[3 * d.size() / 4] = cd(0.0, -1.0);
  }
}

ComplexMatrix build_clock(Dim d) {
  const PhaseConstants pc(d);
  ComplexMatrix z = ComplexMatrix::Zero(d.value(), d.value());
  for (int j = 0; j < d.value(); ++j) {
    z(j, j) = pc.omega_pow(j);
  }
  return z;
}

ComplexMatrix build_shift(Dim d) {
  const int n = d.value();
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    x((j + 1) % n, j) = 1.0;
  }
  return x;
}

ComplexMatrix displacement(const PhaseConstants& pc, GroupIndex r) {
  const int n = pc.dim().value();
  const cd phase = pc.tau_pow(static_cast<long long>(r.r1) * r.r2);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  // X^r1 Z^r2 |j> = w^(j r2) |j + r1>
  for (int j = 0; j < n; ++j) {
    m((j + r.r1) % n, j) = phase * pc.omega_pow(static_cast<long long>(j) * r.r2);
  }
  return m;
}

ComplexVector displace(const PhaseConstants& pc, const ComplexVector& psi, GroupIndex r) {
  const int n = pc.dim().value();
  if (psi.size() != n) {
    throw std::invalid_argument("displace: vector length does not match dimension");
  }
  const cd phase = pc.tau_pow(static_cast<long long>(r.r1) * r.r2);
  ComplexVector out(n);
  for (int j = 0; j < n; ++j) {
    const int src = mod(j - r.r1, n);
    out(j) = phase * pc.omega_pow(static_cast<long long>(src) * r.r2) * psi(src);
  }
  return out;
}

StateVector displace_state(const PhaseConstants& pc, const StateVector& psi, GroupIndex r) {
  // unitary, so the norm is preserved to rounding
  return StateVector(displace(pc, psi.components(), r));
}

DisplacementTable::DisplacementTable(Dim d) : d_(d) {
  const PhaseConstants pc(d);
  ops_.reserve(d.squared());
  for (std::size_t i = 0; i < d.squared(); ++i) {
    ops_.push_back(displacement(pc, GroupIndex::from_flat(d, i)));
  }
}

}  // namespace sicforge
