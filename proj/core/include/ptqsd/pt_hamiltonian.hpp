// SPDX-License-Identifier: Apache-2.0
//
// PT-symmetric two-level Hamiltonian family, its nonunitary propagator and
// the loss-normalized physical channel.
#pragma once

#include "ptqsd/complex2.hpp"
#include "ptqsd/errors.hpp"

namespace ptqsd {

/// H = [[r e^{i theta}, s], [s, r e^{-i theta}]] with real r, s, theta.
///
/// Only the symmetry-unbroken regime |sin(alpha)| = |r sin(theta)/s| < 1 is
/// representable; construction rejects the exceptional point and beyond.
/// Units are hbar = 1 throughout, so times are in units of 1/omega.
struct PtHamiltonian {
  double r = 0.0;
  double s = 1.0;
  double theta = kPi / 2;

  // Derived quantities, fixed at construction.
  double alpha = 0.0;    // arcsin(r sin(theta) / s)
  double omega = 1.0;    // s cos(alpha) = half the eigenvalue gap
  double e_plus = 1.0;   // r cos(theta) + omega
  double e_minus = -1.0; // r cos(theta) - omega

  Mat2 matrix() const;
  bool is_hermitian_limit() const { return alpha == 0.0; }
};

PtHamiltonian make_hamiltonian(double r, double s, double theta);

/// Build from the non-Hermiticity angle alpha at fixed gap 2*omega
/// (r and s are derived; theta defaults to pi/2 as in the optical setup).
PtHamiltonian hamiltonian_from_alpha(double alpha, double omega = 1.0, double theta = kPi / 2);

/// Build from the coupling strength s at fixed gap 2*omega; requires s >= omega.
PtHamiltonian hamiltonian_from_strength(double s, double omega = 1.0, double theta = kPi / 2);

/// U(t) = e^{-iHt}, nonunitary for alpha != 0.
struct Propagator {
  Mat2 matrix;       // full operator including the global phase
  double t = 0.0;
  double sigma_max = 1.0;  // largest singular value of `matrix`
  Complex phase{1.0, 0.0}; // e^{-i r t cos(theta)}
};

Propagator propagator(const PtHamiltonian& h, double t);

/// The experimentally realizable channel V = matrix / (sigma_max * phase):
/// largest singular value one (no gain), global phase stripped. Acting with V
/// and renormalizing gives the same ray as the raw propagator.
Mat2 physical_evolution(const Propagator& p);

/// ||v psi||^2 for a loss-normalized channel v; dissipation = 1 - result.
/// psi must be normalized within 1e-8.
double survival_probability(const Mat2& v, const Ket2& psi);

}  // namespace ptqsd
