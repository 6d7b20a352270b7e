// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ptqsd/two_state.hpp"
#include "test_util.hpp"

using namespace ptqsd;
namespace tu = ptqsd::testutil;

namespace {

// Closed-form evolved inner product, written out independently as the oracle.
double inner_product_formula(double eps, double alpha, double T) {
  const double sa = std::sin(alpha);
  const double ca2 = std::cos(alpha) * std::cos(alpha);
  const double st2 = std::sin(T) * std::sin(T);
  return (2.0 * st2 * (sa * sa * std::cos(eps) - sa) + std::cos(eps) * ca2) / ca2;
}

// Bisection on the closed form, bracketing the smallest positive root.
double bisect_t0(double eps, double alpha, double lo, double hi) {
  auto f = [&](double t) { return inner_product_formula(eps, alpha, t); };
  REQUIRE(f(lo) * f(hi) < 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(lo) * f(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("make_pair overlap and component forms") {
  const StatePair p3 = make_pair(kPi / 3);
  CHECK(inner(p3.psi1, p3.psi2).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(inner(p3.psi1, p3.psi2).imag()) < 1e-15);

  const StatePair p6 = make_pair(kPi / 6);
  CHECK(inner(p6.psi1, p6.psi2).real() ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));

  const StatePair edge = make_pair(kPi / 2 - 1e-9);
  CHECK(std::abs(inner(edge.psi1, edge.psi2)) < 2e-9);

  // exact component shapes
  const double a1 = (kPi - 2.0 * kPi / 3) / 4.0;
  CHECK(p3.psi1.a0.real() == doctest::Approx(std::cos(a1)).epsilon(1e-15));
  CHECK(p3.psi1.a1.imag() == doctest::Approx(-std::sin(a1)).epsilon(1e-15));

  CHECK_THROWS_AS(make_pair(0.0), InvalidParameter);
  CHECK_THROWS_AS(make_pair(kPi / 2), InvalidParameter);
  CHECK_THROWS_AS(make_pair(-0.3), InvalidParameter);
}

TEST_CASE("evolved_inner_product against the closed form") {
  const StatePair pair = make_pair(kPi / 3);

  SUBCASE("t = 0 gives the bare overlap") {
    const PtHamiltonian h = hamiltonian_from_strength(2.0, 1.0);
    CHECK(evolved_inner_product(pair, h, 0.0).real() == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("Hermitian limit is time independent") {
    const PtHamiltonian h = make_hamiltonian(0.0, 1.0, kPi / 2);
    for (double t : {0.3, 1.1, 2.7})
      CHECK(evolved_inner_product(pair, h, t).real() == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("matches the formula on a grid, real-valued") {
    for (double s : {1.05, 1.5, 3.0}) {
      const PtHamiltonian h = hamiltonian_from_strength(s, 1.0);
      for (int i = 0; i <= 40; ++i) {
        const double t = kPi * i / 40.0;
        const Complex ip = evolved_inner_product(pair, h, t);
        CHECK(std::abs(ip.imag()) < 1e-12);
        CHECK(ip.real() ==
              doctest::Approx(inner_product_formula(kPi / 3, h.alpha, h.omega * t))
                  .epsilon(1e-10));
      }
    }
  }
  SUBCASE("vanishes at t0 for s = 3") {
    const PtHamiltonian h = hamiltonian_from_strength(3.0, 1.0);
    const auto times = orthogonality_times(kPi / 3, h);
    REQUIRE(times.has_value());
    CHECK(std::abs(evolved_inner_product(pair, h, times->t0)) < 1e-9);
    CHECK(std::abs(evolved_inner_product(pair, h, times->t1)) < 1e-9);
  }
}

TEST_CASE("orthogonality_times: closed form, bisection oracle, edge cases") {
  SUBCASE("critical configuration returns the exactly coincident root") {
    for (double eps : {kPi / 3, kPi / 6}) {
      const PtHamiltonian h = hamiltonian_from_alpha(critical_alpha(eps), 1.0);
      const auto times = orthogonality_times(eps, h);
      REQUIRE(times.has_value());
      CHECK(times->t0 == times->t1);
      CHECK(times->t0 == doctest::Approx(kPi / 2).epsilon(1e-15));
    }
  }
  SUBCASE("below critical: no solution") {
    CHECK_FALSE(orthogonality_times(kPi / 6, hamiltonian_from_strength(1.1, 1.0)).has_value());
    // Hermitian limit never discriminates
    CHECK_FALSE(orthogonality_times(kPi / 3, make_hamiltonian(0.0, 1.0, kPi / 2)).has_value());
  }
  SUBCASE("s = 3 value against bisection on the closed form") {
    const PtHamiltonian h = hamiltonian_from_strength(3.0, 1.0);
    const auto times = orthogonality_times(kPi / 3, h);
    REQUIRE(times.has_value());
    const double t0_oracle = bisect_t0(kPi / 3, h.alpha, 0.05, 1.0);
    CHECK(times->t0 == doctest::Approx(t0_oracle).epsilon(1e-10));
    CHECK(times->t0 == doctest::Approx(0.23833876313798485).epsilon(1e-9));
    CHECK(times->t1 == doctest::Approx(kPi - t0_oracle).epsilon(1e-10));
  }
  SUBCASE("times scale as 1/omega") {
    const double omega = 2.5;
    const PtHamiltonian h = hamiltonian_from_strength(3.0 * omega, omega);
    const auto times = orthogonality_times(kPi / 3, h);
    REQUIRE(times.has_value());
    CHECK(times->t0 == doctest::Approx(0.23833876313798485 / omega).epsilon(1e-9));
  }
}

TEST_CASE("critical_alpha closed form") {
  const double a3 = critical_alpha(kPi / 3);
  CHECK(std::sin(a3) == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-14));
  CHECK(1.0 / std::cos(a3) == doctest::Approx(1.038).epsilon(1e-3));

  const double a6 = critical_alpha(kPi / 6);
  CHECK(1.0 / std::cos(a6) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-13));
  CHECK(1.0 / std::cos(a6) == doctest::Approx(1.225).epsilon(1e-3));

  CHECK(critical_alpha(kPi / 2 - 1e-6) < 1e-5);  // orthogonal states need no boost
}

TEST_CASE("discrimination_povm structure") {
  SUBCASE("nearly orthogonal Hermitian pair: vanishing loss element, projective parts") {
    const StatePair pair = make_pair(kPi / 2 - 1e-9);
    const PtHamiltonian h = make_hamiltonian(0.0, 1.0, kPi / 2);
    const DiscriminationPovm povm = discrimination_povm(pair, h, 0.7);
    CHECK(povm.pi1.frobenius_norm() < 1e-10);
    CHECK((povm.pi2 * povm.pi2 - povm.pi2).frobenius_norm() < 1e-7);
    CHECK((povm.pi3 * povm.pi3 - povm.pi3).frobenius_norm() < 1e-7);
  }
  SUBCASE("critical point: both states dissipate equally") {
    const StatePair pair = make_pair(kPi / 3);
    const PtHamiltonian h = hamiltonian_from_alpha(critical_alpha(kPi / 3), 1.0);
    const DiscriminationPovm povm = discrimination_povm(pair, h, kPi / 2);
    const Mat2 r1 = DensityMatrix::pure(pair.psi1).matrix();
    const Mat2 r2 = DensityMatrix::pure(pair.psi2).matrix();
    CHECK((r1 * povm.pi1).trace().real() ==
          doctest::Approx((r2 * povm.pi1).trace().real()).epsilon(1e-9));
  }
  SUBCASE("completeness and no wrong decisions at s = 3") {
    const StatePair pair = make_pair(kPi / 3);
    const PtHamiltonian h = hamiltonian_from_strength(3.0, 1.0);
    const auto times = orthogonality_times(kPi / 3, h);
    const DiscriminationPovm povm = discrimination_povm(pair, h, times->t0);
    const Mat2 sum = povm.pi1 + povm.pi2 + povm.pi3;
    CHECK((sum - Mat2::identity()).frobenius_norm() < 1e-10);
    const Mat2 r1 = DensityMatrix::pure(pair.psi1).matrix();
    const Mat2 r2 = DensityMatrix::pure(pair.psi2).matrix();
    CHECK(std::abs((r1 * povm.pi3).trace().real()) < 1e-9);
    CHECK(std::abs((r2 * povm.pi2).trace().real()) < 1e-9);
  }
  SUBCASE("rejects a non-orthogonality time") {
    const StatePair pair = make_pair(kPi / 3);
    const PtHamiltonian h = hamiltonian_from_strength(3.0, 1.0);
    CHECK_THROWS_AS(discrimination_povm(pair, h, 1.0), NotDiscriminating);
  }
  SUBCASE("positivity and completeness on random supercritical configurations") {
    for (int i = 0; i < 60; ++i) {
      const double eps = tu::uniform(0.2, 1.4);
      const double alpha =
          tu::uniform(critical_alpha(eps) + 1e-3, kPi / 2 - 1e-3);
      const PtHamiltonian h = hamiltonian_from_alpha(alpha, 1.0);
      const auto times = orthogonality_times(eps, h);
      REQUIRE(times.has_value());
      const DiscriminationPovm povm = discrimination_povm(make_pair(eps), h, times->t0);
      for (const Mat2* e : {&povm.pi1, &povm.pi2, &povm.pi3})
        CHECK(eigs_hermitian2(Complex(0.5) * (*e + e->adjoint())).values[0] >= -1e-10);
      CHECK((povm.pi1 + povm.pi2 + povm.pi3 - Mat2::identity()).frobenius_norm() < 1e-10);
    }
  }
}

TEST_CASE("mutual information of the PT channel") {
  const StatePair pair = make_pair(kPi / 3);
  const DensityMatrix r1 = DensityMatrix::pure(pair.psi1);
  const DensityMatrix r2 = DensityMatrix::pure(pair.psi2);

  SUBCASE("perfect channel on orthogonal states") {
    const StatePair opair = make_pair(kPi / 2 - 1e-9);
    const PtHamiltonian h = make_hamiltonian(0.0, 1.0, kPi / 2);
    const DiscriminationPovm povm = discrimination_povm(opair, h, 0.0);
    const double mi = mutual_information(povm, DensityMatrix::pure(opair.psi1),
                                         DensityMatrix::pure(opair.psi2));
    CHECK(mi == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("critical point gives exactly the USD value") {
    const PtHamiltonian h = hamiltonian_from_alpha(critical_alpha(kPi / 3), 1.0);
    const double mi = mutual_information(discrimination_povm(pair, h, kPi / 2), r1, r2);
    CHECK(mi == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("s = 3 lands strictly between the USD value and one") {
    const PtHamiltonian h = hamiltonian_from_strength(3.0, 1.0);
    const auto times = orthogonality_times(kPi / 3, h);
    const double mi = mutual_information(discrimination_povm(pair, h, times->t0), r1, r2);
    CHECK(mi > 0.5);
    CHECK(mi < 1.0);
    CHECK(mi == doctest::Approx(0.53791903989334).epsilon(1e-9));  // direct evaluation
  }
  SUBCASE("nondecreasing in s on a log grid, bounded by one") {
    const double s_crit = 1.0 / std::cos(critical_alpha(kPi / 3));
    double prev = -1.0;
    for (int i = 0; i < 50; ++i) {
      const double s = s_crit * std::pow(1000.0 / s_crit, i / 49.0);
      const PtHamiltonian h = hamiltonian_from_strength(s, 1.0);
      const auto times = orthogonality_times(kPi / 3, h);
      REQUIRE(times.has_value());
      const double mi = mutual_information(discrimination_povm(pair, h, times->t0), r1, r2);
      CHECK(mi >= prev - 1e-12);
      CHECK(mi < 1.0);
      prev = mi;
    }
  }
}

TEST_CASE("USD baseline: closed form and explicit POVM cross-check") {
  CHECK(usd_baseline(kPi / 3) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(usd_baseline(kPi / 2 - 1e-9) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(usd_baseline(kPi / 6) == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-14));

  // explicit unambiguous-discrimination POVM run through mutual_information
  for (double eps : {kPi / 6, kPi / 3, 1.2}) {
    const StatePair pair = make_pair(eps);
    const double c = std::cos(eps);
    const Ket2 perp1 = orthonormal_complement(pair.psi1);
    const Ket2 perp2 = orthonormal_complement(pair.psi2);
    DiscriminationPovm usd;
    usd.pi2 = Complex(1.0 / (1.0 + c)) * outer(perp2, perp2);  // concludes "state 1"
    usd.pi3 = Complex(1.0 / (1.0 + c)) * outer(perp1, perp1);  // concludes "state 2"
    usd.pi1 = Mat2::identity() - usd.pi2 - usd.pi3;            // inconclusive
    CHECK(eigs_hermitian2(usd.pi1).values[0] >= -1e-12);
    const double mi = mutual_information(usd, DensityMatrix::pure(pair.psi1),
                                         DensityMatrix::pure(pair.psi2));
    CHECK(mi == doctest::Approx(usd_baseline(eps)).epsilon(1e-12));
  }
}

TEST_CASE("MED baseline: closed form and explicit projective cross-check") {
  CHECK(med_baseline(kPi / 2 - 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(med_baseline(kPi / 3) == doctest::Approx(0.6454).epsilon(1e-3));

  for (double eps : {kPi / 6, kPi / 3}) {
    const StatePair pair = make_pair(eps);
    // Helstrom measurement: eigenbasis of rho1 - rho2
    const Mat2 diff = DensityMatrix::pure(pair.psi1).matrix() -
                      DensityMatrix::pure(pair.psi2).matrix();
    const auto e = eigs_hermitian2(diff);
    DiscriminationPovm med;
    med.pi1 = Mat2::zero();
    med.pi2 = outer(e.v1, e.v1);  // positive eigenvalue: guess "state 1"
    med.pi3 = outer(e.v0, e.v0);
    const double mi = mutual_information(med, DensityMatrix::pure(pair.psi1),
                                         DensityMatrix::pure(pair.psi2));
    CHECK(mi == doctest::Approx(med_baseline(eps)).epsilon(1e-12));
  }
}

TEST_CASE("zero counting of the evolved inner product across one period") {
  // robust crossings only: the critical configuration grazes zero to within
  // rounding, which must not register as a pair of crossings
  const auto count_sign_changes = [](double eps, double s) {
    const PtHamiltonian h = hamiltonian_from_strength(s, 1.0);
    const double tol = 1e-9;
    int changes = 0;
    int prev_sign = 0;
    for (int i = 0; i <= 2000; ++i) {
      const double value = inner_product_formula(eps, h.alpha, kPi * i / 2000.0);
      const int sign = value > tol ? 1 : (value < -tol ? -1 : 0);
      if (sign != 0) {
        if (prev_sign != 0 && sign != prev_sign) ++changes;
        prev_sign = sign;
      }
    }
    return changes;
  };
  CHECK(count_sign_changes(kPi / 3, 1.1) == 2);
  CHECK(count_sign_changes(kPi / 3, 3.0) == 2);
  CHECK(count_sign_changes(kPi / 6, 1.1) == 0);

  // critical: a grazing zero, sign never flips but the minimum touches zero
  const PtHamiltonian hc = hamiltonian_from_alpha(critical_alpha(kPi / 3), 1.0);
  CHECK(count_sign_changes(kPi / 3, hc.s) == 0);
  double min_abs = 1e9;
  for (int i = 0; i <= 2000; ++i)
    min_abs = std::min(min_abs,
                       std::abs(inner_product_formula(kPi / 3, hc.alpha, kPi * i / 2000.0)));
  CHECK(min_abs < 1e-6);
}

TEST_CASE("t0 is strictly decreasing in s") {
  const double s_crit = 1.0 / std::cos(critical_alpha(kPi / 3));
  double prev = kPi;
  for (int i = 0; i < 120; ++i) {
    const double s = s_crit * std::pow(100.0, i / 119.0);
    const auto times = orthogonality_times(kPi / 3, hamiltonian_from_strength(s, 1.0));
    REQUIRE(times.has_value());
    CHECK(times->t0 < prev - 1e-12);
    prev = times->t0;
  }
}

TEST_CASE("renormalized trace distance vs renormalized inner product") {
  for (int i = 0; i < 100; ++i) {
    const double eps = tu::uniform(0.15, 1.5);
    const double s = tu::uniform(1.0, 6.0);
    const double t = tu::uniform(0.0, kPi);
    const StatePair pair = make_pair(eps);
    const Mat2 v = physical_evolution(propagator(hamiltonian_from_strength(s, 1.0), t));
    const Ket2 o1 = (v * pair.psi1).normalized();
    const Ket2 o2 = (v * pair.psi2).normalized();
    const double d = trace_distance(DensityMatrix::pure(o1), DensityMatrix::pure(o2));
    CHECK(d == doctest::Approx(std::sqrt(1.0 - std::norm(inner(o1, o2)))).epsilon(1e-9));
  }
}
