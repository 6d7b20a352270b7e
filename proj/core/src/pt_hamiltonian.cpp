// SPDX-License-Identifier: Apache-2.0
#include "ptqsd/pt_hamiltonian.hpp"

#include <algorithm>
#include <cmath>

namespace ptqsd {

Mat2 PtHamiltonian::matrix() const {
  const Complex phase = std::polar(1.0, theta);
  return {r * phase, Complex(s), Complex(s), r * std::conj(phase)};
}

PtHamiltonian make_hamiltonian(double r, double s, double theta) {
  if (!std::isfinite(r) || !std::isfinite(s) || !std::isfinite(theta))
    throw InvalidParameter("make_hamiltonian: non-finite parameter");
  if (s <= 0.0) throw InvalidParameter("make_hamiltonian: s must be positive");

  const double sin_alpha = r * std::sin(theta) / s;
  if (std::abs(sin_alpha) >= 1.0)
    throw BrokenRegime("make_hamiltonian: |r sin(theta)| >= s (PT symmetry broken)");

  PtHamiltonian h;
  h.r = r;
  h.s = s;
  h.theta = theta;
  h.alpha = std::asin(sin_alpha);
  h.omega = s * std::cos(h.alpha);
  h.e_plus = r * std::cos(theta) + h.omega;
  h.e_minus = r * std::cos(theta) - h.omega;
  return h;
}

PtHamiltonian hamiltonian_from_alpha(double alpha, double omega, double theta) {
  if (!std::isfinite(alpha) || std::abs(alpha) >= kPi / 2)
    throw BrokenRegime("hamiltonian_from_alpha: |alpha| must be below pi/2");
  if (!(omega > 0.0)) throw InvalidParameter("hamiltonian_from_alpha: omega must be positive");
  const double st = std::sin(theta);
  if (std::abs(st) < 1e-12)
    throw InvalidParameter("hamiltonian_from_alpha: sin(theta) ~ 0 cannot carry alpha");
  const double s = omega / std::cos(alpha);
  const double r = s * std::sin(alpha) / st;
  return make_hamiltonian(r, s, theta);
}

PtHamiltonian hamiltonian_from_strength(double s, double omega, double theta) {
  if (!(omega > 0.0)) throw InvalidParameter("hamiltonian_from_strength: omega must be positive");
  if (!(s >= omega)) throw InvalidParameter("hamiltonian_from_strength: requires s >= omega");
  const double cos_alpha = omega / s;
  const double alpha = std::acos(std::min(cos_alpha, 1.0));
  return hamiltonian_from_alpha(alpha, omega, theta);
}

Propagator propagator(const PtHamiltonian& h, double t) {
  if (!std::isfinite(t)) throw InvalidParameter("propagator: non-finite time");

  const double T = h.omega * t;
  const double ca = std::cos(h.alpha);
  const Complex phase = std::polar(1.0, -h.r * t * std::cos(h.theta));
  const Complex minus_i(0.0, -1.0);

  Propagator p;
  p.t = t;
  p.phase = phase;
  p.matrix = (phase / ca) * Mat2{Complex(std::cos(T - h.alpha)), minus_i * std::sin(T),
                                 minus_i * std::sin(T), Complex(std::cos(T + h.alpha))};
  p.sigma_max = svd2(p.matrix).sigma[0];
  return p;
}

Mat2 physical_evolution(const Propagator& p) {
  if (!(p.sigma_max > 0.0)) throw InvalidParameter("physical_evolution: sigma_max must be positive");
  return p.matrix * (Complex(1.0) / (p.sigma_max * p.phase));
}

double survival_probability(const Mat2& v, const Ket2& psi) {
  if (!v.is_finite()) throw InvalidParameter("survival_probability: non-finite channel");
  if (!psi.is_normalized(1e-8))
    throw InvalidParameter("survival_probability: state not normalized");
  const double p = (v * psi).norm2();
  if (p > 1.0 + 1e-9)
    throw InvalidParameter("survival_probability: channel amplifies (not loss-normalized)");
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace ptqsd
