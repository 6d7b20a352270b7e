// SPDX-License-Identifier: Apache-2.0
//
// Closed-form complex 2x2 linear algebra: the qubit workhorse layer.
// Decompositions are exact (characteristic polynomial + explicit vectors),
// deterministic and dependency-free.
#pragma once

#include <array>
#include <complex>

#include "ptqsd/errors.hpp"

namespace ptqsd {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

bool is_finite(Complex z);

/// Qubit amplitude vector over |H> = (1,0)^T and |V> = (0,1)^T.
struct Ket2 {
  Complex a0{};
  Complex a1{};

  double norm2() const;
  double norm() const;
  bool is_finite() const;
  /// True when norm2 is within `tol` of one.
  bool is_normalized(double tol = 1e-12) const;
  /// Same ray, unit norm. Throws InvalidParameter on zero or non-finite input.
  Ket2 normalized() const;
};

/// <a|b>
Complex inner(const Ket2& a, const Ket2& b);

/// Unit vector orthogonal to `a` (phase convention: (-conj(a1), conj(a0))
/// for normalized input).
Ket2 orthonormal_complement(const Ket2& a);

/// 2x2 complex matrix, row-major.
struct Mat2 {
  Complex m00{};
  Complex m01{};
  Complex m10{};
  Complex m11{};

  static Mat2 identity();
  static Mat2 zero();
  static Mat2 diag(Complex d0, Complex d1);
  static Mat2 pauli_x();
  static Mat2 pauli_y();
  static Mat2 pauli_z();

  Mat2 adjoint() const;
  Complex trace() const;
  Complex det() const;
  double frobenius_norm() const;
  bool is_finite() const;
  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;
};

Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(Complex c, const Mat2& a);
Mat2 operator*(const Mat2& a, Complex c);
Ket2 operator*(const Mat2& a, const Ket2& v);

/// |a><b|
Mat2 outer(const Ket2& a, const Ket2& b);

/// Hermitian (1e-10), unit-trace (1e-10), positive (eigenvalues >= -1e-10)
/// 2x2 operator. Invariants are enforced at construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Mat2& m);
  /// |psi><psi| with psi renormalized first.
  static DensityMatrix pure(const Ket2& psi);

  const Mat2& matrix() const { return m_; }

 private:
  Mat2 m_;
};

struct Svd2 {
  Mat2 u;                       // unitary, columns = left singular vectors
  std::array<double, 2> sigma;  // descending, nonnegative
  Mat2 vdag;                    // unitary, rows = conjugated right vectors
};

/// Singular value decomposition m = u * diag(sigma) * vdag.
///
/// Phase convention: the first nonzero component of each left singular
/// vector is real and nonnegative, which makes golden files reproducible.
/// The zero matrix yields sigma = (0, 0) with u = vdag = identity.
Svd2 svd2(const Mat2& m);

struct EigenHermitian2 {
  std::array<double, 2> values;  // ascending
  Ket2 v0;                       // eigenvector of values[0]
  Ket2 v1;                       // eigenvector of values[1], orthonormal to v0
};

/// Eigendecomposition of a Hermitian 2x2 matrix (tolerance 1e-10 on input).
EigenHermitian2 eigs_hermitian2(const Mat2& m);

/// (1/2) tr |r1 - r2|, in [0, 1]. Rejects a non-Hermitian difference beyond
/// 1e-8, which signals corruption upstream.
double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2);

}  // namespace ptqsd
