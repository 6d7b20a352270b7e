// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "ptqsd/complex2.hpp"
#include "test_util.hpp"

using namespace ptqsd;
namespace tu = ptqsd::testutil;

namespace {

// Independent oracle: singular values from the characteristic polynomial of
// m†m, never touching svd2/eigs_hermitian2.
std::array<double, 2> singular_values_charpoly(const Mat2& m) {
  const Mat2 g = m.adjoint() * m;
  const double tr = g.trace().real();
  const double det = std::norm(m.det());
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  return {std::sqrt(std::max((tr + disc) / 2.0, 0.0)),
          std::sqrt(std::max((tr - disc) / 2.0, 0.0))};
}

Mat2 reconstruct(const Svd2& d) {
  return d.u * Mat2::diag(d.sigma[0], d.sigma[1]) * d.vdag;
}

}  // namespace

TEST_CASE("svd2 identity and diagonal cases") {
  const Svd2 id = svd2(Mat2::identity());
  CHECK(id.sigma[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(id.sigma[1] == doctest::Approx(1.0).epsilon(1e-14));

  const Svd2 d = svd2(Mat2::diag(3.0, 0.5));
  CHECK(d.sigma[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(d.sigma[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK((d.u - Mat2::identity()).frobenius_norm() < 1e-12);
  CHECK((d.vdag - Mat2::identity()).frobenius_norm() < 1e-12);
}

TEST_CASE("svd2 zero matrix convention") {
  const Svd2 z = svd2(Mat2::zero());
  CHECK(z.sigma[0] == 0.0);
  CHECK(z.sigma[1] == 0.0);
  CHECK((z.u - Mat2::identity()).frobenius_norm() == 0.0);
  CHECK((z.vdag - Mat2::identity()).frobenius_norm() == 0.0);
}

TEST_CASE("svd2 of a nonunitary propagator-shaped matrix vs charpoly oracle") {
  // cos(alpha) = 1/3, omega t = 0.23833876 (the shape that appears at s = 3)
  const double alpha = std::acos(1.0 / 3.0);
  const double T = 0.23833876313798485;
  const Complex mi(0.0, -1.0);
  const Mat2 m = (Complex(1.0) / std::cos(alpha)) *
                 Mat2{Complex(std::cos(T - alpha)), mi * std::sin(T), mi * std::sin(T),
                      Complex(std::cos(T + alpha))};
  const auto expected = singular_values_charpoly(m);
  const Svd2 d = svd2(m);
  CHECK(d.sigma[0] == doctest::Approx(expected[0]).epsilon(1e-12));
  CHECK(d.sigma[1] == doctest::Approx(expected[1]).epsilon(1e-12));
  CHECK((reconstruct(d) - m).frobenius_norm() < 1e-10);
}

TEST_CASE("svd2 properties on random matrices") {
  for (int i = 0; i < 1000; ++i) {
    const Mat2 m = tu::random_matrix(2.0);
    const Svd2 d = svd2(m);
    CHECK(d.sigma[0] >= d.sigma[1]);
    CHECK(d.sigma[1] >= 0.0);
    CHECK(d.u.is_unitary(1e-12));
    CHECK(d.vdag.is_unitary(1e-12));
    CHECK((reconstruct(d) - m).frobenius_norm() < 1e-10);
    // phase convention: leading components of the left vectors real nonneg
    const Complex lead0 = std::abs(d.u.m00) > 1e-14 ? d.u.m00 : d.u.m10;
    const Complex lead1 = std::abs(d.u.m01) > 1e-14 ? d.u.m01 : d.u.m11;
    CHECK(std::abs(lead0.imag()) < 1e-12);
    CHECK(lead0.real() >= -1e-12);
    CHECK(std::abs(lead1.imag()) < 1e-12);
    CHECK(lead1.real() >= -1e-12);
  }
}

TEST_CASE("svd2 rank-deficient input") {
  const Ket2 a = tu::random_ket();
  const Ket2 b = tu::random_ket();
  const Mat2 m = outer(a, b);  // rank one
  const Svd2 d = svd2(m);
  CHECK(d.sigma[1] < 1e-14);
  CHECK((reconstruct(d) - m).frobenius_norm() < 1e-10);
  CHECK(d.u.is_unitary(1e-12));
}

TEST_CASE("eigs_hermitian2 simple spectra") {
  const auto d = eigs_hermitian2(Mat2::diag(2.0, 5.0));
  CHECK(d.values[0] == doctest::Approx(2.0));
  CHECK(d.values[1] == doctest::Approx(5.0));
  CHECK(std::abs(d.v0.a0) == doctest::Approx(1.0));
  CHECK(std::abs(d.v1.a1) == doctest::Approx(1.0));

  const auto x = eigs_hermitian2(Mat2::pauli_x());
  CHECK(x.values[0] == doctest::Approx(-1.0));
  CHECK(x.values[1] == doctest::Approx(1.0));
  const double is2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(x.v0.a0) - is2) < 1e-12);
  CHECK(std::abs(std::abs(x.v1.a1) - is2) < 1e-12);
  // opposite relative signs for the two eigenvectors
  CHECK(std::abs(inner(x.v0, x.v1)) < 1e-12);
}

TEST_CASE("eigs_hermitian2 residuals on random Hermitian matrices") {
  for (int i = 0; i < 500; ++i) {
    const Mat2 m = tu::random_hermitian(3.0);
    const auto e = eigs_hermitian2(m);
    CHECK(e.values[0] <= e.values[1]);
    for (int k = 0; k < 2; ++k) {
      const Ket2& v = k ? e.v1 : e.v0;
      const double lambda = e.values[k];
      const Ket2 mv = m * v;
      const Ket2 residual{mv.a0 - lambda * v.a0, mv.a1 - lambda * v.a1};
      CHECK(residual.norm() < 1e-10);
    }
    CHECK(std::abs(inner(e.v0, e.v1)) < 1e-12);
    CHECK(e.v0.is_normalized(1e-12));
    CHECK(e.v1.is_normalized(1e-12));
  }
}

TEST_CASE("eigs_hermitian2 rejects non-Hermitian input") {
  CHECK_THROWS_AS(eigs_hermitian2(Mat2{1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 1.0}),
                  InvalidParameter);
}

TEST_CASE("trace_distance basics") {
  const DensityMatrix rho = DensityMatrix::pure(tu::random_ket());
  CHECK(trace_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-14));

  const DensityMatrix h = DensityMatrix::pure(Ket2{1.0, 0.0});
  const DensityMatrix v = DensityMatrix::pure(Ket2{0.0, 1.0});
  CHECK(trace_distance(h, v) == doctest::Approx(1.0).epsilon(1e-14));

  // difference diag(0.5, -0.5) has eigenvalues +-0.5 by inspection
  const DensityMatrix a(Mat2::diag(1.0, 0.0));
  const DensityMatrix b(Mat2::diag(0.5, 0.5));
  CHECK(trace_distance(a, b) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("trace_distance triangle inequality and pure-state identity") {
  for (int i = 0; i < 300; ++i) {
    const Ket2 ka = tu::random_ket();
    const Ket2 kb = tu::random_ket();
    const Ket2 kc = tu::random_ket();
    const DensityMatrix a = DensityMatrix::pure(ka);
    const DensityMatrix b = DensityMatrix::pure(kb);
    const DensityMatrix c = DensityMatrix::pure(kc);
    CHECK(trace_distance(a, b) <= trace_distance(a, c) + trace_distance(c, b) + 1e-9);
    CHECK(trace_distance(a, b) == doctest::Approx(trace_distance(b, a)).epsilon(1e-12));

    const double d = trace_distance(a, b);
    const double overlap2 = std::norm(inner(ka, kb));
    CHECK(d * d + overlap2 == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("DensityMatrix construction enforces the invariants") {
  CHECK_THROWS_AS(DensityMatrix(Mat2{1.0, Complex(0.2, 0.1), Complex(0.3, 0.2), 0.0}),
                  InvalidParameter);  // not Hermitian
  CHECK_THROWS_AS(DensityMatrix(Mat2::diag(0.7, 0.7)), InvalidParameter);  // trace != 1
  CHECK_THROWS_AS(DensityMatrix(Mat2::diag(1.2, -0.2)), InvalidParameter);  // negative eigenvalue
  CHECK_NOTHROW(DensityMatrix(Mat2::diag(0.5, 0.5)));
}

TEST_CASE("non-finite amplitudes are rejected") {
  const double nan = std::nan("");
  CHECK_THROWS_AS((Ket2{Complex(nan, 0.0), Complex(0.0, 0.0)}.normalized()), InvalidParameter);
  CHECK_THROWS_AS(svd2(Mat2{Complex(nan, 0.0), 0.0, 0.0, 1.0}), InvalidParameter);
}
