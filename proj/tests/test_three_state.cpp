// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "ptqsd/photonlab.hpp"
#include "ptqsd/three_state.hpp"
#include "test_util.hpp"

using namespace ptqsd;
namespace tu = ptqsd::testutil;

namespace {

BlochState random_bloch() {
  return {tu::uniform(0.05, kPi - 0.05), tu::uniform(0.0, 2.0 * kPi)};
}

// angles shifted by 2 pi describe the same ray (a global sign on the ket)
double angle_gap(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

// A random jointly nondegenerate triple (resamples until valid).
std::array<BlochState, 3> random_triple() {
  while (true) {
    const std::array<BlochState, 3> s{random_bloch(), random_bloch(), random_bloch()};
    bool ok = true;
    for (const auto& [a, b] :
         {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      const double ov = std::abs(inner(s[static_cast<std::size_t>(a)].ket(),
                                       s[static_cast<std::size_t>(b)].ket()));
      if (ov < 0.05 || ov > 0.95) ok = false;
    }
    if (ok) return s;
  }
}

// Brute-force protocol stage: evolve the canonical kets with the series
// matrix exponential, renormalize, read the overlaps directly.
struct BruteForceStage {
  Ket2 e1, e2, e3;
  double delta, chi, o31, o32;
};

BruteForceStage brute_force_stage(const CanonicalTriple& triple, double alpha, double omega,
                                  double t) {
  const PtHamiltonian h = hamiltonian_from_alpha(alpha, omega);
  const Mat2 u = tu::expm2(Complex(0.0, -t) * h.matrix());
  BruteForceStage out;
  out.e1 = (u * triple.psi1).normalized();
  out.e2 = (u * triple.psi2).normalized();
  out.e3 = (u * triple.psi3).normalized();
  // the evolved psi1 keeps the (cos d/2, -i sin d/2) structure
  const Complex c0 = out.e1.a0;
  const Complex c1 = out.e1.a1;
  const Complex phase = std::abs(c0) > 1e-12 ? c0 / std::abs(c0) : Complex(1.0);
  out.delta = 2.0 * std::atan2((c1 / phase * Complex(0.0, 1.0)).real(), std::abs(c0));
  out.chi = 2.0 * std::atan2(std::abs(out.e3.a1), std::abs(out.e3.a0));
  out.o31 = std::abs(inner(out.e3, out.e1));
  out.o32 = std::abs(inner(out.e3, out.e2));
  return out;
}

}  // namespace

TEST_CASE("canonicalize fixes an already-canonical pair") {
  const double eps = kPi / 4;
  const double a1 = (kPi - 2.0 * eps) / 4.0;
  const double a2 = (kPi + 2.0 * eps) / 4.0;
  // canonical kets as Bloch states: (cos x, -i sin x) has meridian 3 pi / 2
  const BlochState s1{2.0 * a1, 3.0 * kPi / 2.0};
  const BlochState s2{2.0 * a2, 3.0 * kPi / 2.0};
  const BlochState s3{1.1, 0.7};
  const CanonicalTriple triple = canonicalize(s1, s2, s3);
  CHECK(triple.eps12 == doctest::Approx(eps).epsilon(1e-12));
  CHECK(tu::distance_up_to_phase(triple.rot, Mat2::identity()) < 1e-10);
}

TEST_CASE("canonicalize of the uniform triples") {
  SUBCASE("beta = pi/3") {
    const auto s = uniform_triple(kPi / 3);
    const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
    CHECK(std::cos(triple.eps12) == doctest::Approx(std::sqrt(0.4375)).epsilon(1e-12));
    // closed form from the Bloch angles
    const double cf = std::sqrt(
        (1.0 + std::cos(kPi / 3) * std::cos(kPi / 3) +
         std::sin(kPi / 3) * std::sin(kPi / 3) * std::cos(2.0 * kPi / 3)) /
        2.0);
    CHECK(std::cos(triple.eps12) == doctest::Approx(cf).epsilon(1e-12));
  }
  SUBCASE("beta = pi/2 reduces to the eps = pi/3 two-state geometry") {
    const auto s = uniform_triple(kPi / 2);
    const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
    CHECK(std::cos(triple.eps12) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("canonicalize on random triples: forms and preserved overlaps") {
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_triple();
    const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
    const Ket2 k1 = s[0].ket(), k2 = s[1].ket(), k3 = s[2].ket();

    CHECK(triple.rot.is_unitary(1e-12));
    // pairwise overlap magnitudes preserved
    CHECK(std::abs(inner(triple.rot * k1, triple.rot * k2)) ==
          doctest::Approx(std::abs(inner(k1, k2))).epsilon(1e-12));
    CHECK(std::abs(inner(triple.rot * k1, triple.rot * k3)) ==
          doctest::Approx(std::abs(inner(k1, k3))).epsilon(1e-12));
    CHECK(std::abs(inner(triple.rot * k2, triple.rot * k3)) ==
          doctest::Approx(std::abs(inner(k2, k3))).epsilon(1e-12));

    // rotated states match the canonical forms up to a global phase
    CHECK(tu::ket_distance_up_to_phase(triple.rot * k1, triple.psi1) < 1e-10);
    CHECK(tu::ket_distance_up_to_phase(triple.rot * k2, triple.psi2) < 1e-10);
    CHECK(tu::ket_distance_up_to_phase(triple.rot * k3, triple.psi3) < 1e-10);
  }
}

TEST_CASE("canonicalize rejects degenerate triples") {
  const BlochState a{0.8, 0.3};
  CHECK_THROWS_AS(canonicalize(a, a, BlochState{1.2, 2.0}), DegenerateTriple);
  // antipodal states are orthogonal
  const BlochState north{0.0, 0.0};
  const BlochState south{kPi, 0.0};
  CHECK_THROWS_AS(canonicalize(north, south, BlochState{1.0, 1.0}), DegenerateTriple);
}

TEST_CASE("stage_one critical values of the experimental triples") {
  const auto t3 = uniform_triple(kPi / 3);
  const CanonicalTriple c3 = canonicalize(t3[0], t3[1], t3[2]);
  CHECK(critical_alpha(c3.eps12) == doctest::Approx(0.39).epsilon(0.013));  // 0.3876

  const auto t2 = uniform_triple(kPi / 2);
  const CanonicalTriple c2 = canonicalize(t2[0], t2[1], t2[2]);
  CHECK(critical_alpha(c2.eps12) == doctest::Approx(0.27).epsilon(0.006));  // 0.2713

  CHECK_THROWS_AS(stage_one(c3, 0.3, 1.0), NoOrthogonalityTime);
  CHECK_THROWS_AS(stage_one(c3, kPi / 2, 1.0), InvalidParameter);
}

TEST_CASE("stage_one invariants and brute-force agreement") {
  for (double beta : {kPi / 3, kPi / 2}) {
    const auto s = uniform_triple(beta);
    const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
    const double alpha_c = critical_alpha(triple.eps12);

    double prev_p3 = -1.0;
    for (double alpha : {alpha_c, 0.8, 1.2, 1.5}) {
      const ProtocolResult r = stage_one(triple, alpha, 1.0);

      CHECK(std::abs(inner(r.evolved2, r.evolved1)) < 1e-9);
      CHECK(r.o31 * r.o31 + r.o32 * r.o32 == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(r.p1 == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(r.p2 == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(r.p3 == doctest::Approx(1.0 - r.o32 * r.o32).epsilon(1e-9));
      CHECK(r.p3 > prev_p3);  // strictly increasing across the alpha list
      prev_p3 = r.p3;

      const BruteForceStage bf = brute_force_stage(triple, r.alpha, 1.0, r.time);
      CHECK(angle_gap(r.delta, bf.delta) < 1e-9);
      CHECK(angle_gap(r.chi, bf.chi) < 1e-9);
      CHECK(r.o31 == doctest::Approx(bf.o31).epsilon(1e-9));
      CHECK(r.o32 == doctest::Approx(bf.o32).epsilon(1e-9));
    }
  }
}

TEST_CASE("stage_one closed-form angles match brute force on random triples") {
  for (int i = 0; i < 100; ++i) {
    const auto s = random_triple();
    const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
    const double alpha_c = critical_alpha(triple.eps12);
    const double alpha = tu::uniform(alpha_c, kPi / 2 - 0.02);
    const ProtocolResult r = stage_one(triple, alpha, 1.0);
    const BruteForceStage bf = brute_force_stage(triple, r.alpha, 1.0, r.time);
    CHECK(angle_gap(r.delta, bf.delta) < 1e-9);
    CHECK(angle_gap(r.chi, bf.chi) < 1e-9);
    CHECK(std::abs(r.o31 - bf.o31) < 1e-9);
    CHECK(std::abs(r.o32 - bf.o32) < 1e-9);
  }
}

TEST_CASE("o32 is nonincreasing in alpha and converges to a nonzero value") {
  for (double beta : {kPi / 3, kPi / 2}) {
    const auto s = uniform_triple(beta);
    const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
    const double alpha_c = critical_alpha(triple.eps12);
    double prev = 2.0;
    double last = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double alpha = alpha_c + (kPi / 2 - 1e-4 - alpha_c) * i / 199.0;
      const double o32 = stage_one(triple, alpha, 1.0).o32;
      CHECK(o32 <= prev + 1e-10);
      prev = o32;
      last = o32;
    }
    CHECK(last > 0.1);  // nonzero limit
  }
}

TEST_CASE("stage_two reduces to the two-state machinery") {
  SUBCASE("uniform triple: eps13 = eps12 and the same critical alpha") {
    const auto s = uniform_triple(kPi / 3);
    const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
    const StageTwoResult st = stage_two(triple, 1.0, 1.0);
    CHECK(st.eps13 == doctest::Approx(triple.eps12).epsilon(1e-12));
    CHECK(critical_alpha(st.eps13) ==
          doctest::Approx(critical_alpha(triple.eps12)).epsilon(1e-12));
  }
  SUBCASE("identical outputs to a direct two-state run at the same overlap") {
    const auto s = uniform_triple(kPi / 2);  // eps13 = pi/3 exactly
    const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
    const StageTwoResult st = stage_two(triple, 1.2, 1.0);
    CHECK(st.eps13 == doctest::Approx(kPi / 3).epsilon(1e-12));
    const PtHamiltonian h = hamiltonian_from_alpha(1.2, 1.0);
    const auto times = orthogonality_times(kPi / 3, h);
    CHECK(st.times.t0 == doctest::Approx(times->t0).epsilon(1e-12));
    const DiscriminationPovm direct = discrimination_povm(make_pair(kPi / 3), h, times->t0);
    CHECK((st.povm.pi1 - direct.pi1).frobenius_norm() < 1e-10);
    CHECK((st.povm.pi2 - direct.pi2).frobenius_norm() < 1e-10);
  }
  SUBCASE("evolved pair is orthogonal at the returned time on random triples") {
    for (int i = 0; i < 50; ++i) {
      const auto s = random_triple();
      const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
      const double alpha = tu::uniform(critical_alpha(std::acos(
                                           std::abs(inner(triple.psi3, triple.psi1)))) +
                                           0.01,
                                       kPi / 2 - 0.02);
      const StageTwoResult st = stage_two(triple, alpha, 1.0);
      const Mat2 v = physical_evolution(propagator(st.hamiltonian, st.times.t0));
      const Ket2 o1 = (v * st.pair.psi1).normalized();
      const Ket2 o3 = (v * st.pair.psi2).normalized();
      CHECK(std::abs(inner(o1, o3)) < 1e-9);
    }
  }
  SUBCASE("below the stage-two critical alpha") {
    const auto s = uniform_triple(kPi / 3);
    const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
    CHECK_THROWS_AS(stage_two(triple, 0.1, 1.0), NoOrthogonalityTime);
  }
}

TEST_CASE("predicted_counts_probabilities") {
  ProtocolResult r;
  r.p1 = 1.0;
  r.p2 = 1.0;
  r.o32 = 0.0;
  r.p3 = 1.0;
  const CountProbabilities perfect = predicted_counts_probabilities(r);
  CHECK(perfect.p1 == 1.0);
  CHECK(perfect.p2 == 1.0);
  CHECK(perfect.p3 == 1.0);

  const auto s = uniform_triple(kPi / 3);
  const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
  const ProtocolResult stage = stage_one(triple, 1.5, 1.0);
  const CountProbabilities p = predicted_counts_probabilities(stage);
  CHECK(p.p3 == doctest::Approx(1.0 - stage.o32 * stage.o32).epsilon(1e-12));
  CHECK(p.p1 * p.p2 * p.p3 <= 1.0 + 1e-12);
}
