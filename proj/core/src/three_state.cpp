// SPDX-License-Identifier: Apache-2.0
#include "ptqsd/three_state.hpp"

#include <algorithm>
#include <cmath>

namespace ptqsd {

namespace {

// arg(z) with the zero input mapped to 0 instead of an arbitrary branch.
double safe_arg(Complex z) {
  if (std::abs(z) < 1e-14) return 0.0;
  return std::arg(z);
}

}  // namespace

Ket2 BlochState::ket() const {
  if (!std::isfinite(beta) || !std::isfinite(gamma))
    throw InvalidParameter("BlochState: non-finite angles");
  return {Complex(std::cos(beta / 2)), std::polar(std::sin(beta / 2), gamma)};
}

CanonicalTriple canonicalize(const BlochState& s1, const BlochState& s2, const BlochState& s3) {
  const Ket2 k1 = s1.ket();
  const Ket2 k2 = s2.ket();
  const Ket2 k3 = s3.ket();

  for (const auto& [a, b] : {std::pair{k1, k2}, std::pair{k1, k3}, std::pair{k2, k3}}) {
    const double ov = std::abs(inner(a, b));
    if (ov <= 1e-10) throw DegenerateTriple("canonicalize: an input pair is orthogonal");
    if (ov >= 1.0 - 1e-10) throw DegenerateTriple("canonicalize: an input pair coincides");
  }

  const double hb1 = s1.beta / 2;
  // R1 sends psi1 to (1, 0)^T exactly.
  const Mat2 r1{Complex(std::cos(hb1)), std::polar(std::sin(hb1), -s1.gamma),
                -std::polar(std::sin(hb1), s1.gamma), Complex(std::cos(hb1))};

  // R2 = diag(1, -i e^{-i(lambda + gamma2)}) turns psi2's meridian to 3pi/2.
  // lambda is the phase mismatch between the two components of R1 psi2,
  // referenced to gamma2; atan2 via complex arg handles every quadrant.
  const Ket2 r1k2 = r1 * k2;
  const double lambda = safe_arg(r1k2.a1 * std::polar(1.0, -s2.gamma)) - safe_arg(r1k2.a0);
  const Mat2 r2 = Mat2::diag(1.0, Complex(0.0, -1.0) * std::polar(1.0, -(lambda + s2.gamma)));

  const double eps12 = std::acos(std::clamp(std::abs(inner(k2, k1)), 0.0, 1.0));

  // R3: rotation about X lifting (1,0) and (cos e, -i sin e) to the
  // symmetric pair of parallels (pi -/+ 2 eps12)/2.
  const double a1 = (kPi - 2.0 * eps12) / 4.0;
  const Complex minus_i(0.0, -1.0);
  const Mat2 r3{Complex(std::cos(a1)), minus_i * std::sin(a1), minus_i * std::sin(a1),
                Complex(std::cos(a1))};

  CanonicalTriple triple;
  triple.rot = r3 * (r2 * r1);
  triple.eps12 = eps12;

  const Ket2 kappa = triple.rot * k3;
  triple.mu = 2.0 * std::atan2(std::abs(kappa.a1), std::abs(kappa.a0));
  double nu = safe_arg(kappa.a1) - safe_arg(kappa.a0);
  nu -= 2.0 * kPi * std::floor(nu / (2.0 * kPi));  // wrap to [0, 2 pi)
  triple.nu = nu;

  const StatePair pair = make_pair(eps12);
  triple.psi1 = pair.psi1;
  triple.psi2 = pair.psi2;
  triple.psi3 = {Complex(std::cos(triple.mu / 2)), std::polar(std::sin(triple.mu / 2), triple.nu)};
  return triple;
}

ProtocolResult stage_one(const CanonicalTriple& triple, double alpha, double omega) {
  if (!(alpha < kPi / 2)) throw InvalidParameter("stage_one: alpha must be below pi/2");
  const double alpha_c = critical_alpha(triple.eps12);
  if (alpha < alpha_c - 1e-12)
    throw NoOrthogonalityTime("stage_one: alpha = " + std::to_string(alpha) +
                              " is below this triple's critical value " +
                              std::to_string(alpha_c));

  const PtHamiltonian h = hamiltonian_from_alpha(std::max(alpha, alpha_c), omega);
  const auto times = orthogonality_times(triple.eps12, h);
  if (!times) throw NoOrthogonalityTime("stage_one: no orthogonality time at this alpha");

  const Propagator prop = propagator(h, times->t0);
  const Mat2 v = physical_evolution(prop);

  ProtocolResult r;
  r.alpha = h.alpha;
  r.omega = omega;
  r.time = times->t0;
  r.evolved1 = (v * triple.psi1).normalized();
  r.evolved2 = (v * triple.psi2).normalized();
  r.evolved3 = (v * triple.psi3).normalized();
  r.survival1 = survival_probability(v, triple.psi1);
  r.survival2 = survival_probability(v, triple.psi2);
  r.survival3 = survival_probability(v, triple.psi3);

  r.o31 = std::clamp(std::abs(inner(r.evolved3, r.evolved1)), 0.0, 1.0);
  r.o32 = std::clamp(std::abs(inner(r.evolved3, r.evolved2)), 0.0, 1.0);

  // Projective measurement in the orthonormal evolved basis {psi1', psi1'^perp}:
  // psi1 always lands in H, psi2 (orthogonal to psi1') always in V.
  const Ket2 basis_v = orthonormal_complement(r.evolved1);
  r.p1 = 1.0;
  r.p2 = std::norm(inner(basis_v, r.evolved2));
  r.p3 = 1.0 - std::norm(inner(basis_v, r.evolved3));

  // Closed-form angles. delta describes psi1' = (cos d/2, -i sin d/2); both
  // components share one positive normalizer, so atan2 of the numerators is
  // exact. chi is built from the magnitudes of the evolved psi3 components.
  const double T = h.omega * times->t0;
  const double a1 = (kPi - 2.0 * triple.eps12) / 4.0;
  const double du = std::cos(T - h.alpha) * std::cos(a1) - std::sin(T) * std::sin(a1);
  const double dv = std::sin(T) * std::cos(a1) + std::cos(T + h.alpha) * std::sin(a1);
  r.delta = 2.0 * std::atan2(dv, du);

  const double hm = triple.mu / 2;
  const Complex e_nu = std::polar(1.0, triple.nu);
  const Complex minus_i(0.0, -1.0);
  const Complex tau1 =
      std::cos(T - h.alpha) * std::cos(hm) + minus_i * std::sin(T) * e_nu * std::sin(hm);
  const Complex tau2 =
      minus_i * std::sin(T) * std::cos(hm) + std::cos(T + h.alpha) * e_nu * std::sin(hm);
  r.chi = 2.0 * std::atan2(std::abs(tau2), std::abs(tau1));
  return r;
}

StageTwoResult stage_two(const CanonicalTriple& triple, double alpha2, double omega) {
  const double overlap13 = std::clamp(std::abs(inner(triple.psi3, triple.psi1)), 0.0, 1.0);
  if (overlap13 <= 1e-10 || overlap13 >= 1.0 - 1e-10)
    throw DegenerateTriple("stage_two: psi1/psi3 overlap degenerate");

  StageTwoResult out;
  out.eps13 = std::acos(overlap13);
  const double alpha_c = critical_alpha(out.eps13);
  if (alpha2 < alpha_c - 1e-12)
    throw NoOrthogonalityTime("stage_two: alpha2 = " + std::to_string(alpha2) +
                              " is below the critical value " + std::to_string(alpha_c) +
                              " of the psi1/psi3 overlap");

  out.pair = make_pair(out.eps13);
  out.hamiltonian = hamiltonian_from_alpha(std::max(alpha2, alpha_c), omega);
  const auto times = orthogonality_times(out.eps13, out.hamiltonian);
  if (!times) throw NoOrthogonalityTime("stage_two: no orthogonality time at this alpha");
  out.times = *times;
  out.povm = discrimination_povm(out.pair, out.hamiltonian, out.times.t0);
  return out;
}

CountProbabilities predicted_counts_probabilities(const ProtocolResult& result) {
  // Stage-one H/V ratios times the (conclusive) stage-two ratios:
  //   P1 = [N1H/(N1H+N1V)] [N2H/(N2H+N2V)] -> p1 * 1
  //   P2 = [N1V/(N1H+N1V)]                 -> p2
  //   P3 = [N1H/(N1H+N1V)] [N2V/(N2H+N2V)] -> (1 - o32^2) * 1
  CountProbabilities p;
  p.p1 = result.p1;
  p.p2 = result.p2;
  p.p3 = result.p3;
  return p;
}

}  // namespace ptqsd
