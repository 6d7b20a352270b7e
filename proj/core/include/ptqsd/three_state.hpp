// SPDX-License-Identifier: Apache-2.0
//
// Three-state discrimination: canonicalization of an arbitrary nonorthogonal
// triple, PT evolution, and the two-stage measurement protocol.
#pragma once

#include "ptqsd/complex2.hpp"
#include "ptqsd/pt_hamiltonian.hpp"
#include "ptqsd/two_state.hpp"

namespace ptqsd {

/// Pure qubit state by Bloch angles: (cos(beta/2), e^{i gamma} sin(beta/2)).
struct BlochState {
  double beta = 0.0;   // parallel, [0, pi]
  double gamma = 0.0;  // meridian, [0, 2 pi)

  Ket2 ket() const;
};

/// Result of rotating an arbitrary triple into the canonical frame:
/// psi1/psi2 take the standard two-state forms with overlap angle eps12 and
/// psi3 becomes (cos(mu/2), e^{i nu} sin(mu/2)), overall phases dropped.
struct CanonicalTriple {
  double eps12 = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  Mat2 rot;    // the composite rotation R3 R2 R1
  Ket2 psi1;   // canonical forms (exact shapes, not rot * input)
  Ket2 psi2;
  Ket2 psi3;
};

/// Build the canonical frame. Inputs must be pairwise distinct and pairwise
/// nonorthogonal (all overlap magnitudes strictly inside (0, 1)).
CanonicalTriple canonicalize(const BlochState& s1, const BlochState& s2, const BlochState& s3);

/// Outcome of the first protocol stage at non-Hermiticity alpha: psi1 and
/// psi2 evolve into an orthogonal pair; psi3 leaks into both branches.
///
/// Probabilities are conditioned on photon detection. p1 = p2 = 1 is exact in
/// this analytic model; p3 = 1 - o32^2 where o32 = |<psi3'|psi2'>|.
struct ProtocolResult {
  double p1 = 1.0;
  double p2 = 1.0;
  double p3 = 0.0;
  double o31 = 0.0;        // |<psi3'|psi1'>|
  double o32 = 0.0;        // |<psi3'|psi2'>|
  double delta = 0.0;      // closed-form angle of psi1' = (cos d/2, -i sin d/2)
  double chi = 0.0;        // closed-form angle of psi3', from |tau1|, |tau2|
  double alpha = 0.0;
  double omega = 1.0;
  double time = 0.0;       // the orthogonality time t0 used
  Ket2 evolved1, evolved2, evolved3;  // normalized time-evolved states
  double survival1 = 1.0, survival2 = 1.0, survival3 = 1.0;
};

ProtocolResult stage_one(const CanonicalTriple& triple, double alpha, double omega = 1.0);

/// Second stage: unambiguous discrimination of (psi1, psi3) at overlap angle
/// eps13, delegated to the two-state machinery with fresh state copies.
struct StageTwoResult {
  double eps13 = 0.0;
  StatePair pair;              // canonical (psi1, psi3) forms
  PtHamiltonian hamiltonian;
  OrthogonalityTimes times;
  DiscriminationPovm povm;     // conclusive POVM at times.t0
};

StageTwoResult stage_two(const CanonicalTriple& triple, double alpha2, double omega = 1.0);

/// Expected values of the count-ratio estimators built from two-stage photon
/// counts: (1, 1, 1 - o32^2) for an ideal run.
struct CountProbabilities {
  double p1 = 1.0;
  double p2 = 1.0;
  double p3 = 0.0;
};

CountProbabilities predicted_counts_probabilities(const ProtocolResult& result);

}  // namespace ptqsd
