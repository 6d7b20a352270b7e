// SPDX-License-Identifier: Apache-2.0
#include "ptqsd/optics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ptqsd::optics {

namespace {

constexpr double kDegPerRad = 180.0 / kPi;

// Phase factor making det(u * phase) = 1 and keeping a0 >= 0.
Mat2 special_unitary_part(const Mat2& u, Complex* phase_out) {
  const Complex det = u.det();
  Complex phase = std::polar(1.0, -std::arg(det) / 2.0);
  Mat2 su = u * phase;
  if ((su.m00 + su.m11).real() < 0.0) {
    su = su * Complex(-1.0);
    phase = -phase;
  }
  if (phase_out) *phase_out = phase;
  return su;
}

std::string format_angle(double rad) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+12.8f rad  (%+11.6f deg)", rad, rad * kDegPerRad);
  return buf;
}

}  // namespace

QuaternionParams quaternion_params(const Mat2& u) {
  if (!u.is_finite()) throw InvalidParameter("quaternion_params: non-finite entries");
  if (!u.is_unitary(1e-10)) throw InvalidParameter("quaternion_params: input not unitary");

  const Mat2 su = special_unitary_part(u, nullptr);

  QuaternionParams a;
  a.a0 = 0.5 * (su.m00.real() + su.m11.real());
  a.a1 = 0.5 * (su.m11.imag() - su.m00.imag());
  a.a2 = -0.5 * (su.m01.imag() + su.m10.imag());
  a.a3 = 0.5 * (su.m10.real() - su.m01.real());

  const double n = std::sqrt(a.a0 * a.a0 + a.a1 * a.a1 + a.a2 * a.a2 + a.a3 * a.a3);
  a.a0 /= n;
  a.a1 /= n;
  a.a2 /= n;
  a.a3 /= n;
  return a;
}

EulerAngles euler_angles(const QuaternionParams& a) {
  const auto safe_atan = [](double num, double den) {
    if (num == 0.0 && den == 0.0) return 0.0;
    if (den == 0.0) return num > 0.0 ? kPi / 2 : -kPi / 2;
    return std::atan(num / den);
  };
  const double t30 = safe_atan(a.a3, a.a0);
  const double t21 = safe_atan(a.a2, a.a1);
  const double sign_term = (a.a1 >= 0.0) ? 0.0 : kPi;  // (pi/2)(1 - sign a1)

  EulerAngles e;
  e.xi = t30 + t21 + sign_term;
  e.eta = 2.0 * std::acos(std::min(1.0, std::hypot(a.a0, a.a3)));
  e.zeta = t30 - t21 - sign_term;
  return e;
}

WaveplateSequence waveplate_angles(const EulerAngles& e) {
  WaveplateSequence w;
  w.q1_angle = kPi / 4 + e.xi / 2;
  w.h_angle = -kPi / 4 + (e.xi + e.eta - e.zeta) / 4;
  w.q2_angle = kPi / 4 - e.zeta / 2;
  return w;
}

Mat2 rotation(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {Complex(c), Complex(-s), Complex(s), Complex(c)};
}

Mat2 qwp_jones(double phi) {
  return rotation(phi) * Mat2::diag(1.0, Complex(0.0, 1.0)) * rotation(-phi);
}

Mat2 hwp_jones(double phi) { return rotation(phi) * Mat2::diag(1.0, -1.0) * rotation(-phi); }

Mat2 euler_reconstruct(const EulerAngles& e) {
  const auto ry = [](double ang) {
    const double c = std::cos(ang / 2), s = std::sin(ang / 2);
    return Mat2{Complex(c), Complex(-s), Complex(s), Complex(c)};
  };
  const auto rz = [](double ang) {
    return Mat2::diag(std::polar(1.0, -ang / 2), std::polar(1.0, ang / 2));
  };
  return ry(e.xi) * rz(e.eta) * ry(e.zeta);
}

Mat2 waveplate_reconstruct(const WaveplateSequence& w) {
  return qwp_jones(w.q1_angle) * hwp_jones(w.h_angle) * qwp_jones(w.q2_angle);
}

LossyDecomposition decompose_lossy(const Mat2& m) {
  if (!m.is_finite()) throw InvalidParameter("decompose_lossy: non-finite entries");
  if (m.frobenius_norm() == 0.0) throw InvalidParameter("decompose_lossy: zero matrix");

  const Svd2 dec = svd2(m);

  // Pull the determinant phases of both unitary factors into c so that the
  // plate compilation sees special-unitary T and W (stable golden files).
  Complex phase_t, phase_w;
  LossyDecomposition d;
  d.t_unitary = special_unitary_part(dec.u, &phase_t);
  d.w_unitary = special_unitary_part(dec.vdag, &phase_w);
  d.loss = dec.sigma[0] > 0.0 ? dec.sigma[1] / dec.sigma[0] : 0.0;
  d.loss = std::clamp(d.loss, 0.0, 1.0);
  d.c = dec.sigma[0] / (phase_t * phase_w);
  d.hwp_loss_angle = 0.5 * std::asin(d.loss);
  return d;
}

Mat2 lossy_reconstruct(const LossyDecomposition& d) {
  return d.c * d.t_unitary * Mat2::diag(1.0, d.loss) * d.w_unitary;
}

BenchSheet bench_sheet(const LossyDecomposition& d) {
  BenchSheet sheet;
  sheet.decomposition = d;
  sheet.w_plates = waveplate_angles(euler_angles(quaternion_params(d.w_unitary)));
  sheet.t_plates = waveplate_angles(euler_angles(quaternion_params(d.t_unitary)));

  const bool lossy = d.loss < 1.0 - 1e-12;
  // Beam order: rightmost factor acts first, so each QHQ triple is listed
  // Q(q2), H, Q(q1), and the W stage precedes the loss stage and T stage.
  sheet.elements = {
      {"W", "QWP", sheet.w_plates.q2_angle, true},
      {"W", "HWP", sheet.w_plates.h_angle, true},
      {"W", "QWP", sheet.w_plates.q1_angle, true},
      {"loss", "HWP(V arm)", d.hwp_loss_angle, lossy},
      {"T", "QWP", sheet.t_plates.q2_angle, true},
      {"T", "HWP", sheet.t_plates.h_angle, true},
      {"T", "QWP", sheet.t_plates.q1_angle, true},
  };

  std::string text;
  text += "optical bench recipe (beam order)\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf), "scale factor c: modulus %.12f, phase %+.12f rad\n",
                std::abs(d.c), std::arg(d.c));
  text += buf;
  std::snprintf(buf, sizeof(buf), "loss element M = diag(1, %.12f)\n", d.loss);
  text += buf;
  int index = 1;
  for (const auto& el : sheet.elements) {
    if (el.stage == "loss") {
      if (el.active) {
        std::snprintf(buf, sizeof(buf), "%d. [loss] interferometer, HWP at %s in the V arm\n",
                      index, format_angle(el.angle).c_str());
      } else {
        std::snprintf(buf, sizeof(buf),
                      "%d. [loss] pass-through (no attenuation; interferometer may be omitted)\n",
                      index);
      }
    } else {
      std::snprintf(buf, sizeof(buf), "%d. [%s] %s at %s\n", index, el.stage.c_str(),
                    el.kind.c_str(), format_angle(el.angle).c_str());
    }
    text += buf;
    ++index;
  }
  sheet.text = text;
  return sheet;
}

}  // namespace ptqsd::optics
