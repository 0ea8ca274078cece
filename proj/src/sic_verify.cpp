#include "sicforge/sic_verify.hpp"

#include <algorithm>
#include <cmath>

namespace sicforge {

GramOverlaps gram_overlaps(const PhaseConstants& pc, const StateVector& psi) {
  const Dim d = psi.dim();
  const int n = d.value();
  const ComplexVector& v = psi.components();
  GramOverlaps out{d, std::vector<cd>(d.squared()), std::vector<double>(d.squared(), 0.0)};
  std::vector<cd> terms(d.size());
  for (int r1 = 0; r1 < n; ++r1) {
    for (int r2 = 0; r2 < n; ++r2) {
      for (int j = 0; j < n; ++j) {
        terms[static_cast<std::size_t>(j)] =
            pc.omega_pow(static_cast<long long>(j) * r2) * std::conj(v((j + r1) % n)) * v(j);
      }
      const GroupIndex r(d, r1, r2);
      const cd value = pc.tau_pow(static_cast<long long>(r1) * r2) * pairwise_sum(terms);
      out.values[r.flat(d)] = value;
      if (!r.is_zero() && std::abs(value) > 0.0) {
        out.phases[r.flat(d)] = std::arg(value);
      }
    }
  }
  return out;
}

GramOverlaps gram_overlaps(const StateVector& psi) {
  return gram_overlaps(PhaseConstants(psi.dim()), psi);
}

double gram_residual(const StateVector& psi) {
  const GramOverlaps g = gram_overlaps(psi);
  const double target = 1.0 / (psi.dim().value() + 1);
  double worst = 0.0;
  for (std::size_t i = 1; i < g.values.size(); ++i) {
    worst = std::max(worst, std::abs(std::norm(g.values[i]) - target));
  }
  return worst;
}

cd quartic_sum(const ComplexVector& psi, int k, int l) {
  const int n = static_cast<int>(psi.size());
  std::vector<cd> terms(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    terms[static_cast<std::size_t>(j)] = psi(j) * std::conj(psi(mod(j + k, n))) *
                                         std::conj(psi(mod(j + l, n))) * psi(mod(j + k + l, n));
  }
  return pairwise_sum(terms);
}

double quartic_target(Dim d, int k, int l) {
  const int n = d.value();
  const int deltas = (mod(k, n) == 0 ? 1 : 0) + (mod(l, n) == 0 ? 1 : 0);
  return static_cast<double>(deltas) / (n + 1);
}

double quartic_residual(const StateVector& psi) {
  const Dim d = psi.dim();
  double worst = 0.0;
  for (int k = 0; k < d.value(); ++k) {
    for (int l = 0; l < d.value(); ++l) {
      worst = std::max(worst, std::abs(quartic_sum(psi.components(), k, l) - quartic_target(d, k, l)));
    }
  }
  return worst;
}

FtaValues fta_check(const StateVector& psi, int k, int r1) {
  const Dim d = psi.dim();
  const PhaseConstants pc(d);
  const GramOverlaps g = gram_overlaps(pc, psi);
  std::vector<cd> terms(d.size());
  for (int r2 = 0; r2 < d.value(); ++r2) {
    terms[static_cast<std::size_t>(r2)] =
        pc.omega_pow(static_cast<long long>(k) * r2) * std::norm(g.at(GroupIndex(d, r1, r2)));
  }
  return {pairwise_sum(terms) / static_cast<double>(d.value()), quartic_sum(psi.components(), k, r1)};
}

SicSet build_sic_set(const StateVector& psi, double tol) {
  const Dim d = psi.dim();
  const PhaseConstants pc(d);
  SicSet set{psi, {}, {}, gram_residual(psi), quartic_residual(psi), tol, false};
  set.vectors.reserve(d.squared());
  set.projectors.reserve(d.squared());
  for (std::size_t i = 0; i < d.squared(); ++i) {
    StateVector v = displace_state(pc, psi, GroupIndex::from_flat(d, i));
    set.projectors.push_back(projector(v.components()));
    set.vectors.push_back(std::move(v));
  }
  set.certified = set.gram_residual <= tol && set.quartic_residual <= tol;
  return set;
}

}  // namespace sicforge
