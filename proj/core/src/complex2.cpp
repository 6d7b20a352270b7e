// SPDX-License-Identifier: Apache-2.0
#include "ptqsd/complex2.hpp"

#include <algorithm>
#include <cmath>

namespace ptqsd {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double Ket2::norm2() const { return std::norm(a0) + std::norm(a1); }

double Ket2::norm() const { return std::sqrt(norm2()); }

bool Ket2::is_finite() const { return ptqsd::is_finite(a0) && ptqsd::is_finite(a1); }

bool Ket2::is_normalized(double tol) const { return std::abs(norm2() - 1.0) <= tol; }

Ket2 Ket2::normalized() const {
  if (!is_finite()) throw InvalidParameter("Ket2::normalized: non-finite amplitudes");
  const double n = norm();
  if (n <= 0.0) throw InvalidParameter("Ket2::normalized: zero vector");
  return {a0 / n, a1 / n};
}

Complex inner(const Ket2& a, const Ket2& b) {
  return std::conj(a.a0) * b.a0 + std::conj(a.a1) * b.a1;
}

Ket2 orthonormal_complement(const Ket2& a) {
  const Ket2 u = a.normalized();
  return {-std::conj(u.a1), std::conj(u.a0)};
}

Mat2 Mat2::identity() { return {1.0, 0.0, 0.0, 1.0}; }
Mat2 Mat2::zero() { return {0.0, 0.0, 0.0, 0.0}; }
Mat2 Mat2::diag(Complex d0, Complex d1) { return {d0, 0.0, 0.0, d1}; }
Mat2 Mat2::pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 Mat2::pauli_y() { return {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}; }
Mat2 Mat2::pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

Mat2 Mat2::adjoint() const {
  return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
}

Complex Mat2::trace() const { return m00 + m11; }

Complex Mat2::det() const { return m00 * m11 - m01 * m10; }

double Mat2::frobenius_norm() const {
  return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
}

bool Mat2::is_finite() const {
  return ptqsd::is_finite(m00) && ptqsd::is_finite(m01) && ptqsd::is_finite(m10) &&
         ptqsd::is_finite(m11);
}

bool Mat2::is_hermitian(double tol) const {
  return std::abs(m00.imag()) <= tol && std::abs(m11.imag()) <= tol &&
         std::abs(m01 - std::conj(m10)) <= tol;
}

bool Mat2::is_unitary(double tol) const {
  const Mat2 g = adjoint() * (*this);
  return (g - Mat2::identity()).frobenius_norm() <= tol;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Mat2 operator*(Complex c, const Mat2& a) {
  return {c * a.m00, c * a.m01, c * a.m10, c * a.m11};
}

Mat2 operator*(const Mat2& a, Complex c) { return c * a; }

Ket2 operator*(const Mat2& a, const Ket2& v) {
  return {a.m00 * v.a0 + a.m01 * v.a1, a.m10 * v.a0 + a.m11 * v.a1};
}

Mat2 outer(const Ket2& a, const Ket2& b) {
  return {a.a0 * std::conj(b.a0), a.a0 * std::conj(b.a1), a.a1 * std::conj(b.a0),
          a.a1 * std::conj(b.a1)};
}

DensityMatrix::DensityMatrix(const Mat2& m) : m_(m) {
  if (!m.is_finite()) throw InvalidParameter("DensityMatrix: non-finite entries");
  if (!m.is_hermitian(1e-10)) throw InvalidParameter("DensityMatrix: not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > 1e-10)
    throw InvalidParameter("DensityMatrix: trace != 1");
  const EigenHermitian2 e = eigs_hermitian2(m);
  if (e.values[0] < -1e-10) throw InvalidParameter("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const Ket2& psi) {
  const Ket2 u = psi.normalized();
  return DensityMatrix(outer(u, u));
}

EigenHermitian2 eigs_hermitian2(const Mat2& m) {
  if (!m.is_finite()) throw InvalidParameter("eigs_hermitian2: non-finite entries");
  if (!m.is_hermitian(1e-10)) throw InvalidParameter("eigs_hermitian2: input not Hermitian");

  const double a = m.m00.real();
  const double d = m.m11.real();
  const Complex b = 0.5 * (m.m01 + std::conj(m.m10));  // symmetrized off-diagonal

  const double mean = 0.5 * (a + d);
  const double half_gap = 0.5 * (a - d);
  const double root = std::hypot(half_gap, std::abs(b));

  EigenHermitian2 out;
  out.values = {mean - root, mean + root};

  if (root <= 0.0) {
    out.v0 = {1.0, 0.0};
    out.v1 = {0.0, 1.0};
    return out;
  }

  // Eigenvector of the larger eigenvalue. Two algebraically equivalent
  // candidates exist; the one with the larger norm is numerically stable.
  const double hi = out.values[1];
  Ket2 v_hi;
  if (half_gap >= 0.0)
    v_hi = Ket2{Complex(hi - d, 0.0), std::conj(b)};
  else
    v_hi = Ket2{b, Complex(hi - a, 0.0)};
  v_hi = v_hi.normalized();

  // Make the first significant component real nonnegative for determinism.
  Complex lead = (std::abs(v_hi.a0) > 1e-14) ? v_hi.a0 : v_hi.a1;
  const Complex phase = std::conj(lead) / std::abs(lead);
  v_hi = {phase * v_hi.a0, phase * v_hi.a1};

  out.v1 = v_hi;
  out.v0 = orthonormal_complement(v_hi);
  return out;
}

Svd2 svd2(const Mat2& m) {
  if (!m.is_finite()) throw InvalidParameter("svd2: non-finite entries");

  Svd2 out;
  if (m.frobenius_norm() == 0.0) {
    out.u = Mat2::identity();
    out.sigma = {0.0, 0.0};
    out.vdag = Mat2::identity();
    return out;
  }

  const EigenHermitian2 e = eigs_hermitian2(m.adjoint() * m);
  const double s0 = std::sqrt(std::max(e.values[1], 0.0));
  // The small eigenvalue of m†m cancels catastrophically near rank one;
  // sigma0 * sigma1 = |det m| recovers sigma1 at full precision.
  const double s1 = s0 > 0.0 ? std::min(std::abs(m.det()) / s0, s0) : 0.0;
  Ket2 v0 = e.v1;  // right singular vector of the dominant value
  Ket2 v1 = e.v0;

  Ket2 u0 = (m * v0).normalized();

  // m*v1 is orthogonal to u0 up to rounding; removing the u0 component and
  // renormalizing keeps u exactly unitary even for tiny sigma[1].
  Ket2 u1_raw = m * v1;
  const Complex overlap = inner(u0, u1_raw);
  u1_raw = {u1_raw.a0 - overlap * u0.a0, u1_raw.a1 - overlap * u0.a1};
  Ket2 u1 = (u1_raw.norm() > 1e-13 * s0) ? u1_raw.normalized() : orthonormal_complement(u0);

  // Phase convention: first nonzero component of each left vector is
  // real nonnegative; the paired right vector absorbs the same phase.
  const auto fix_phase = [](Ket2& u, Ket2& v) {
    const Complex lead = (std::abs(u.a0) > 1e-14) ? u.a0 : u.a1;
    if (std::abs(lead) == 0.0) return;
    const Complex p = std::conj(lead) / std::abs(lead);
    u = {p * u.a0, p * u.a1};
    v = {p * v.a0, p * v.a1};
  };
  fix_phase(u0, v0);
  fix_phase(u1, v1);

  out.u = {u0.a0, u1.a0, u0.a1, u1.a1};
  out.sigma = {s0, s1};
  out.vdag = {std::conj(v0.a0), std::conj(v0.a1), std::conj(v1.a0), std::conj(v1.a1)};
  return out;
}

double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  const Mat2 diff = r1.matrix() - r2.matrix();
  if (!diff.is_hermitian(1e-8))
    throw NumericalFailure("trace_distance: non-Hermitian difference");
  const Mat2 herm = Complex(0.5) * (diff + diff.adjoint());
  const EigenHermitian2 e = eigs_hermitian2(herm);
  const double d = 0.5 * (std::abs(e.values[0]) + std::abs(e.values[1]));
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace ptqsd
