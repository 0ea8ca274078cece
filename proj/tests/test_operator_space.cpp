#include "sicforge/operator_space.hpp"
#include "sicforge/sic_verify.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace sicforge;
using namespace sicforge::testing;

namespace {

OperatorSet random_psd_set(Rng& rng, Dim d) {
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < d.squared(); ++i) {
    ops.push_back(random_psd_unit(rng, d));
  }
  return OperatorSet(d, std::move(ops));
}

std::vector<StateVector> random_states(Rng& rng, Dim d, std::size_t count) {
  std::vector<StateVector> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(haar_state(rng, d));
  }
  return out;
}

}  // namespace

TEST_CASE("hs_inner") {
  for (int n = 2; n <= 5; ++n) {
    CHECK(std::abs(hs_inner(identity(Dim(n)), identity(Dim(n))) - static_cast<double>(n)) == 0.0);
  }
  CHECK(std::abs(hs_inner(build_clock(Dim(2)), build_shift(Dim(2)))) == 0.0);
  Rng rng(3);
  const ComplexMatrix p = projector(haar_state(rng, Dim(4)).components());
  CHECK(std::abs(hs_inner(p, p) - 1.0) <= 1e-14);
  CHECK_THROWS_AS(hs_inner(identity(Dim(2)), identity(Dim(3))), std::invalid_argument);
}

TEST_CASE("OperatorSet validation") {
  CHECK_THROWS_AS(OperatorSet(Dim(2), {}), std::invalid_argument);
  CHECK_THROWS_AS(OperatorSet(Dim(2), {identity(Dim(2))}), std::invalid_argument);  // tr(A^2) = 2
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = -1.0;
  CHECK_THROWS_AS(OperatorSet(Dim(2), {neg}), std::invalid_argument);
  ComplexMatrix skew = projector(StateVector::basis(Dim(2), 0).components());
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(OperatorSet(Dim(2), {skew}), std::invalid_argument);
  CHECK_NOTHROW(OperatorSet(Dim(2), {identity(Dim(2)) / std::sqrt(2.0)}));
}

TEST_CASE("kt_lower_bound values") {
  CHECK(kt_lower_bound(Dim(2), 1.0) == 4.0);
  CHECK(kt_lower_bound(Dim(2), 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(kt_lower_bound(Dim(3), 2.0) == doctest::Approx(4.5).epsilon(1e-15));
  for (int n = 2; n <= 10; ++n) {
    CHECK(kt_lower_bound(Dim(n), 1.0) == static_cast<double>(n * n * n - n * n));
  }
  CHECK_THROWS_AS(kt_lower_bound(Dim(2), 0.5), std::invalid_argument);
}

TEST_CASE("kt_measure examples") {
  const SicSet qubit = build_sic_set(qubit_fiducial());
  const OperatorSet sic2 = OperatorSet::from_vectors(qubit.vectors);
  const KtReport k1 = kt_measure(sic2, 1.0);
  CHECK(k1.value == doctest::Approx(4.0).epsilon(1e-12));
  REQUIRE(k1.gap.has_value());
  CHECK(std::abs(*k1.gap) <= 1e-12);
  CHECK(kt_measure(sic2, 2.0).value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  const ComplexMatrix p0 = projector(StateVector::basis(Dim(2), 0).components());
  const OperatorSet same(Dim(2), std::vector<ComplexMatrix>(4, p0));
  CHECK(kt_measure(same, 1.0).value == 12.0);

  CHECK_THROWS_AS(kt_measure(same, 0.99), std::invalid_argument);

  // the bound only applies to d^2 operators
  const OperatorSet three(Dim(2), std::vector<ComplexMatrix>(3, p0));
  const KtReport partial = kt_measure(three, 1.0);
  CHECK(partial.value == 6.0);
  CHECK_FALSE(partial.lower_bound.has_value());
  CHECK_FALSE(partial.gap.has_value());
}

TEST_CASE("K_t bound holds for random PSD unit sets") {
  Rng rng(41);
  for (int n : {2, 3, 4}) {
    const Dim d(n);
    for (int trial = 0; trial < 200; ++trial) {
      const OperatorSet set = random_psd_set(rng, d);
      for (double t : {1.0, 1.5, 2.0, 3.0}) {
        const KtReport r = kt_measure(set, t);
        CHECK(r.value >= 0.0);
        CHECK(r.value >= kt_lower_bound(d, t) - 1e-9);
        CHECK(*r.gap >= -1e-9);
      }
    }
  }
}

TEST_CASE("frame potential") {
  Rng rng(7);
  CHECK(frame_potential(random_states(rng, Dim(3), 1)) == doctest::Approx(1.0).epsilon(1e-15));

  const SicSet qubit = build_sic_set(qubit_fiducial());
  CHECK(frame_potential(qubit.vectors) == doctest::Approx(16.0 / 3.0).epsilon(1e-12));
  CHECK(frame_potential_bound(Dim(2)) == doctest::Approx(16.0 / 3.0));
  CHECK(frame_potential_bound(Dim(3)) == doctest::Approx(13.5));

  for (int n : {2, 3, 4}) {
    const Dim d(n);
    for (int trial = 0; trial < 50; ++trial) {
      const auto vs = random_states(rng, d, d.squared());
      const double phi = frame_potential(vs);
      const double k2 = kt_measure(OperatorSet::from_vectors(vs), 2.0).value;
      CHECK(std::abs(phi - (k2 + n * n)) <= 1e-10);
      CHECK(phi >= frame_potential_bound(d) - 1e-10);
    }
  }

  std::vector<StateVector> mixed{StateVector::basis(Dim(2), 0), StateVector::basis(Dim(3), 0)};
  CHECK_THROWS_AS(frame_potential(mixed), std::invalid_argument);
}

TEST_CASE("quasi-ONB certification") {
  SUBCASE("exact d = 3 SIC passes") {
    const SicSet sic = build_sic_set(hesse_fiducial());
    const QuasiOnbCertificate c = quasi_onb_certify(OperatorSet::from_vectors(sic.vectors), 1e-10);
    CHECK(c.passed);
    CHECK(c.projector_deviation <= 1e-10);
    CHECK(c.overlap_deviation <= 1e-10);
    CHECK(c.completeness_deviation <= 1e-10);
  }
  SUBCASE("identical projectors fail the overlap criterion") {
    for (int n = 2; n <= 4; ++n) {
      const Dim d(n);
      const ComplexMatrix p0 = projector(StateVector::basis(d, 0).components());
      const QuasiOnbCertificate c =
          quasi_onb_certify(OperatorSet(d, std::vector<ComplexMatrix>(d.squared(), p0)), 1e-10);
      CHECK_FALSE(c.passed);
      CHECK(c.overlap_deviation == doctest::Approx(1.0 - 1.0 / (n + 1)));
      CHECK(c.projector_deviation <= 1e-15);
    }
  }
  SUBCASE("random projector sets fail") {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
      const auto vs = random_states(rng, Dim(3), 9);
      const QuasiOnbCertificate c = quasi_onb_certify(OperatorSet::from_vectors(vs), 1e-10);
      CHECK_FALSE(c.passed);
      CHECK(c.overlap_deviation > 0.0);
    }
  }
  SUBCASE("wrong count rejected") {
    const ComplexMatrix p0 = projector(StateVector::basis(Dim(2), 0).components());
    CHECK_THROWS_AS(quasi_onb_certify(OperatorSet(Dim(2), {p0, p0}), 1e-10), std::invalid_argument);
  }
}

TEST_CASE("equality in the K_t bound is equivalent to a SIC") {
  // certified -> zero gap
  for (const StateVector& psi : {qubit_fiducial(), hesse_fiducial()}) {
    const SicSet sic = build_sic_set(psi);
    const OperatorSet ops = OperatorSet::from_vectors(sic.vectors);
    REQUIRE(quasi_onb_certify(ops, 1e-10).passed);
    CHECK(std::abs(*kt_measure(ops, 1.0).gap) <= 1e-8);
    CHECK(std::abs(*kt_measure(ops, 2.0).gap) <= 1e-8);
  }
  // small t = 2 gap -> passes at 1e-4; gap is quadratic in the perturbation
  Rng rng(13);
  int exercised = 0;
  for (double eps : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7}) {
    for (int trial = 0; trial < 5; ++trial) {
      const StateVector psi =
          StateVector::normalized(hesse_fiducial().components() + eps * gaussian_vector(rng, 3));
      const OperatorSet ops = OperatorSet::from_vectors(build_sic_set(psi).vectors);
      const double gap = *kt_measure(ops, 2.0).gap;
      CHECK(gap >= -1e-12);
      if (gap <= 1e-10) {
        ++exercised;
        CHECK(quasi_onb_certify(ops, 1e-4).passed);
      }
    }
  }
  CHECK(exercised > 0);
}

TEST_CASE("completeness follows from a passing certificate") {
  const SicSet sic = build_sic_set(qubit_fiducial());
  const QuasiOnbCertificate c = quasi_onb_certify(OperatorSet::from_vectors(sic.vectors), 1e-10);
  REQUIRE(c.passed);
  CHECK(c.completeness_deviation <= 10 * c.tol);
}
