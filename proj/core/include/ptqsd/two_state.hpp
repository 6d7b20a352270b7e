// SPDX-License-Identifier: Apache-2.0
//
// Two-state discrimination: canonical nonorthogonal pairs, orthogonality-time
// and critical-value solvers, the three-outcome POVM, mutual information, and
// the Hermitian USD/MED baselines.
#pragma once

#include <optional>

#include "ptqsd/complex2.hpp"
#include "ptqsd/pt_hamiltonian.hpp"

namespace ptqsd {

/// Canonical pair on the Bloch sphere with real, positive overlap
/// <psi1|psi2> = cos(epsilon), epsilon in (0, pi/2).
struct StatePair {
  double epsilon = 0.0;
  Ket2 psi1;  // (cos((pi-2e)/4), -i sin((pi-2e)/4))
  Ket2 psi2;  // (cos((pi+2e)/4), -i sin((pi+2e)/4))
};

StatePair make_pair(double epsilon);

/// <psi1| U†U |psi2> for the full (unnormalized) propagator at time t.
/// Real-valued up to rounding; vanishes exactly at the orthogonality times.
Complex evolved_inner_product(const StatePair& pair, const PtHamiltonian& h, double t);

struct OrthogonalityTimes {
  double t0 = 0.0;  // in (0, pi/(2 omega)]
  double t1 = 0.0;  // pi/omega - t0; equals t0 exactly at the critical value
};

/// The two times in one period at which the evolved pair becomes orthogonal,
/// or nullopt when cos(epsilon) > 2 sin(alpha)/(1 + sin^2(alpha)).
std::optional<OrthogonalityTimes> orthogonality_times(double epsilon, const PtHamiltonian& h);

/// Smallest alpha admitting an orthogonality time:
/// sin(alpha_c) = (1 - sin(epsilon)) / cos(epsilon); at this value t0 = t1.
double critical_alpha(double epsilon);

/// Three-outcome measurement {loss, "state 1", "state 2"} built from the
/// loss-normalized channel at an orthogonality time.
struct DiscriminationPovm {
  Mat2 pi1;  // I - V†V, the dissipation outcome
  Mat2 pi2;  // V†|phi1><phi1|V, conclusive "psi1"
  Mat2 pi3;  // V†|phi2><phi2|V, conclusive "psi2"
  double prior1 = 0.5;
  double prior2 = 0.5;
};

DiscriminationPovm discrimination_povm(const StatePair& pair, const PtHamiltonian& h, double t,
                                       double prior1 = 0.5, double prior2 = 0.5);

/// H(A:B) in bits for the stored priors; 0*log(0) terms contribute zero.
double mutual_information(const DiscriminationPovm& povm, const DensityMatrix& rho1,
                          const DensityMatrix& rho2);

/// Binary entropy in bits.
double binary_entropy(double p);

/// Mutual information of the optimal unambiguous discrimination channel at
/// equal priors: (1 - cos(epsilon)) bits.
double usd_baseline(double epsilon);

/// Mutual information of the Helstrom minimum-error measurement at equal
/// priors: 1 - H2((1 + sin(epsilon))/2) bits.
double med_baseline(double epsilon);

}  // namespace ptqsd
