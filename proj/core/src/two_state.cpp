// SPDX-License-Identifier: Apache-2.0
#include "ptqsd/two_state.hpp"

#include <algorithm>
#include <cmath>

namespace ptqsd {

namespace {

void check_epsilon(double epsilon, const char* where) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0 || epsilon >= kPi / 2)
    throw InvalidParameter(std::string(where) + ": epsilon must lie in (0, pi/2)");
}

}  // namespace

StatePair make_pair(double epsilon) {
  check_epsilon(epsilon, "make_pair");
  const double a1 = (kPi - 2.0 * epsilon) / 4.0;
  const double a2 = (kPi + 2.0 * epsilon) / 4.0;
  const Complex minus_i(0.0, -1.0);
  StatePair pair;
  pair.epsilon = epsilon;
  pair.psi1 = {Complex(std::cos(a1)), minus_i * std::sin(a1)};
  pair.psi2 = {Complex(std::cos(a2)), minus_i * std::sin(a2)};
  return pair;
}

Complex evolved_inner_product(const StatePair& pair, const PtHamiltonian& h, double t) {
  const Mat2 u = propagator(h, t).matrix;
  return inner(u * pair.psi1, u * pair.psi2);
}

std::optional<OrthogonalityTimes> orthogonality_times(double epsilon, const PtHamiltonian& h) {
  check_epsilon(epsilon, "orthogonality_times");

  const double sa = std::sin(h.alpha);
  const double ce = std::cos(epsilon);
  if (sa <= 0.0) return std::nullopt;  // Hermitian or gain-first sign: never orthogonal

  // sin^2(omega t) = cos^2(alpha) cos(eps) / (2 sin(alpha) - 2 sin^2(alpha) cos(eps)),
  // solvable iff cos(eps) <= 2 sin(alpha) / (1 + sin^2(alpha)). Both conditions
  // are the same inequality; evaluating q directly keeps them consistent.
  const double ca2 = 1.0 - sa * sa;
  const double q = ca2 * ce / (2.0 * sa * (1.0 - sa * ce));
  if (q > 1.0 + 1e-13) return std::nullopt;

  OrthogonalityTimes times;
  if (q >= 1.0 - 1e-13) {
    // Critical value. t0 = asin(sqrt(q)) loses half the significant digits
    // near q = 1, so configurations within 1e-13 of critical are snapped to
    // the exact coincident root.
    times.t0 = times.t1 = kPi / (2.0 * h.omega);
    return times;
  }
  times.t0 = std::asin(std::sqrt(q)) / h.omega;
  times.t1 = kPi / h.omega - times.t0;
  return times;
}

double critical_alpha(double epsilon) {
  check_epsilon(epsilon, "critical_alpha");
  return std::asin((1.0 - std::sin(epsilon)) / std::cos(epsilon));
}

DiscriminationPovm discrimination_povm(const StatePair& pair, const PtHamiltonian& h, double t,
                                       double prior1, double prior2) {
  if (!(prior1 >= 0.0) || !(prior2 >= 0.0) || std::abs(prior1 + prior2 - 1.0) > 1e-12)
    throw InvalidParameter("discrimination_povm: priors must be nonnegative and sum to 1");

  const Mat2 v = physical_evolution(propagator(h, t));
  const Ket2 phi1 = (v * pair.psi1).normalized();
  Ket2 phi2 = (v * pair.psi2).normalized();

  if (std::abs(inner(phi1, phi2)) > 1e-8)
    throw NotDiscriminating("discrimination_povm: evolved states are not orthogonal at t");

  // One Gram-Schmidt step so that {phi1, phi2} is an exactly complete basis;
  // completeness of the POVM then holds to machine precision.
  const Complex ov = inner(phi1, phi2);
  phi2 = Ket2{phi2.a0 - ov * phi1.a0, phi2.a1 - ov * phi1.a1}.normalized();

  const Mat2 vdag = v.adjoint();
  DiscriminationPovm povm;
  povm.pi2 = vdag * outer(phi1, phi1) * v;
  povm.pi3 = vdag * outer(phi2, phi2) * v;
  povm.pi1 = Mat2::identity() - vdag * v;
  povm.prior1 = prior1;
  povm.prior2 = prior2;

  const Mat2 sum = povm.pi1 + povm.pi2 + povm.pi3;
  if ((sum - Mat2::identity()).frobenius_norm() > 1e-10)
    throw NumericalFailure("discrimination_povm: completeness drift");
  for (const Mat2* e : {&povm.pi1, &povm.pi2, &povm.pi3}) {
    if (eigs_hermitian2(Complex(0.5) * (*e + e->adjoint())).values[0] < -1e-10)
      throw NumericalFailure("discrimination_povm: element not positive");
  }
  return povm;
}

double binary_entropy(double p) {
  if (!(p >= 0.0) || !(p <= 1.0)) throw InvalidParameter("binary_entropy: p outside [0,1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double mutual_information(const DiscriminationPovm& povm, const DensityMatrix& rho1,
                          const DensityMatrix& rho2) {
  const double p[2] = {povm.prior1, povm.prior2};
  const Mat2* rho[2] = {&rho1.matrix(), &rho2.matrix()};
  const Mat2* pi[3] = {&povm.pi1, &povm.pi2, &povm.pi3};

  const Mat2 mixed = Complex(p[0]) * (*rho[0]) + Complex(p[1]) * (*rho[1]);

  double info = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double q = std::max(((mixed) * (*pi[j])).trace().real(), 0.0);
    for (int i = 0; i < 2; ++i) {
      const double a = std::max(((*rho[i]) * (*pi[j])).trace().real(), 0.0);
      if (a <= 1e-15) continue;  // 0 log 0 := 0
      info += p[i] * a * std::log2(a / q);
    }
  }
  return std::clamp(info, 0.0, 1.0);
}

double usd_baseline(double epsilon) {
  check_epsilon(epsilon, "usd_baseline");
  return 1.0 - std::cos(epsilon);
}

double med_baseline(double epsilon) {
  check_epsilon(epsilon, "med_baseline");
  const double p_success = 0.5 * (1.0 + std::sin(epsilon));
  return 1.0 - binary_entropy(p_success);
}

}  // namespace ptqsd
