// SPDX-License-Identifier: Apache-2.0
//
// Compile 2x2 operators into optical-bench recipes: QWP/HWP/QWP sequences for
// unitaries, and a c*T*M*W factorization with one lossy interferometer stage
// for general (nonunitary) operators.
//
// Jones conventions used throughout (asserted up to a global phase):
//   HWP(phi) = R(phi) diag(1, -1) R(-phi)
//   QWP(phi) = R(phi) diag(1,  i) R(-phi)
// with R(phi) the real rotation by phi.
#pragma once

#include <string>
#include <vector>

#include "ptqsd/complex2.hpp"

namespace ptqsd::optics {

/// Real quadruple (a0, a1, a2, a3), a0 >= 0, sum of squares one, such that
/// u ~ [[a0 - i a1, -i a2 - a3], [-i a2 + a3, a0 + i a1]] up to global phase.
struct QuaternionParams {
  double a0 = 1.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

QuaternionParams quaternion_params(const Mat2& u);

/// Y-Z-Y Euler angles: u ~ exp(-i xi s2/2) exp(-i eta s3/2) exp(-i zeta s2/2).
struct EulerAngles {
  double xi = 0.0;
  double eta = 0.0;
  double zeta = 0.0;
};

/// Degenerate denominators follow the frozen conventions: arctan(a2/a1) := 0
/// when a1 = a2 = 0, arctan(a3/a0) := 0 when a0 = a3 = 0, sign(0) := +1.
EulerAngles euler_angles(const QuaternionParams& a);

/// Fast-axis orientations of the QWP/HWP/QWP triple realizing the unitary;
/// an affine function of the Euler angles.
struct WaveplateSequence {
  double q1_angle = 0.0;  // pi/4 + xi/2
  double h_angle = 0.0;   // -pi/4 + (xi + eta - zeta)/4
  double q2_angle = 0.0;  // pi/4 - zeta/2
};

WaveplateSequence waveplate_angles(const EulerAngles& e);

// Jones matrices and reconstruction helpers (also used by the tests).
Mat2 rotation(double phi);
Mat2 qwp_jones(double phi);
Mat2 hwp_jones(double phi);
Mat2 euler_reconstruct(const EulerAngles& e);
/// Q(q1) * H(h) * Q(q2)
Mat2 waveplate_reconstruct(const WaveplateSequence& w);

/// m = c * T * diag(1, loss) * W with special-unitary T, W and loss in [0,1];
/// the attenuator is a HWP at hwp_loss_angle in the V arm, sin(2 angle) = loss.
struct LossyDecomposition {
  Complex c{1.0, 0.0};
  Mat2 t_unitary;
  double loss = 1.0;           // second diagonal entry of M; the first is 1
  Mat2 w_unitary;
  double hwp_loss_angle = kPi / 4;  // in [0, pi/4]
};

LossyDecomposition decompose_lossy(const Mat2& m);

Mat2 lossy_reconstruct(const LossyDecomposition& d);

/// One physical element of the compiled bench, in beam order.
struct BenchElement {
  std::string stage;   // "W", "loss", "T"
  std::string kind;    // "QWP", "HWP", "HWP(V arm)"
  double angle = 0.0;  // fast-axis orientation, radians
  bool active = true;  // false for a pass-through loss stage (loss == 1)
};

struct BenchSheet {
  LossyDecomposition decomposition;
  WaveplateSequence w_plates;
  WaveplateSequence t_plates;
  std::vector<BenchElement> elements;  // exactly 7, in the order the photon
                                       // meets them: W plates, loss, T plates
  std::string text;                    // rendered recipe
};

BenchSheet bench_sheet(const LossyDecomposition& d);

}  // namespace ptqsd::optics
