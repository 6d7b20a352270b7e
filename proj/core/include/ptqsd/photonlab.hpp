// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo model of the photonic experiment: finite-shot detector counts,
// Stokes tomography with physicality correction, dissipation estimation, and
// the two seeded experiment pipelines.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptqsd/complex2.hpp"
#include "ptqsd/pt_hamiltonian.hpp"
#include "ptqsd/three_state.hpp"
#include "ptqsd/two_state.hpp"

namespace ptqsd {

struct CountRecord {
  std::vector<std::string> labels;        // effect labels plus trailing "lost"
  std::vector<std::uint64_t> counts;      // same length as labels, sums to shots
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Multinomial draw over Tr(rho * effect) plus the residual "lost" outcome.
/// Effects must be PSD within -1e-10 and sum to at most identity within 1e-10.
/// Deterministic for a fixed seed.
CountRecord simulate_counts(const DensityMatrix& state, const std::vector<Mat2>& effects,
                            const std::vector<std::string>& labels, std::uint64_t shots,
                            std::uint64_t seed);

CountRecord simulate_counts(const Ket2& state, const std::vector<Mat2>& effects,
                            const std::vector<std::string>& labels, std::uint64_t shots,
                            std::uint64_t seed);

struct DissipationEstimate {
  double value = 0.0;
  double std_error = 0.0;  // binomial
};

/// lost / (lost + detected); throws on zero total.
DissipationEstimate estimate_dissipation(std::uint64_t lost, std::uint64_t detected);

struct TomographyOptions {
  std::uint64_t shots_per_basis = 30000;
  std::uint64_t seed = 0;
  bool infinite_shots = false;  // use exact probabilities instead of sampling
  bool mle_refine = false;      // iterative maximum-likelihood pass
};

struct TomographyResult {
  DensityMatrix rho;                          // after physicality correction
  std::array<double, 3> stokes{};             // empirical (Sx, Sy, Sz)
  std::array<double, 3> stokes_std_error{};   // binomial, zero in exact mode

  double fidelity_to(const DensityMatrix& ref) const;
  double fidelity_to(const Ket2& ref) const;
};

/// Projective counts in the H/V, D/A and R/L bases on the (renormalized)
/// channel output, then linear Stokes inversion with eigenvalue clamping.
TomographyResult tomography(const Ket2& state, const TomographyOptions& options);

// ---------------------------------------------------------------------------
// Experiment pipelines.

struct TwoStateExperimentConfig {
  double epsilon = kPi / 3;
  double s = 1.1;
  double omega = 1.0;
  double theta = kPi / 2;
  std::vector<double> t_grid;
  /// Detected-photon budget per data point and trial, split evenly over the
  /// eight measurement settings of a point (two states, each with one
  /// dissipation setting and three tomography bases). Mirrors a source rate
  /// times a per-point integration time.
  std::uint64_t shots = 30000;
  int trials = 10;
  std::uint64_t seed = 0;
  bool infinite_shots = false;
  bool mle_refine = false;
  int threads = 1;
};

struct TwoStateSweepPoint {
  double t = 0.0;
  double inner_product = 0.0;   // renormalized evolved <psi1'|psi2'>, real part
  double d_analytic = 0.0;
  double d_mean = 0.0;
  double d_std = 0.0;
  double loss1_analytic = 0.0;
  double loss1_mean = 0.0;
  double loss1_std = 0.0;
  double loss2_analytic = 0.0;
  double loss2_mean = 0.0;
  double loss2_std = 0.0;
};

/// Simulated dissipations and tomography-based trace distance across the time
/// grid; mean and standard deviation over `trials` independent substreams.
std::vector<TwoStateSweepPoint> experiment_two_state(const TwoStateExperimentConfig& config);

struct ThreeStateExperimentConfig {
  std::array<BlochState, 3> states{};
  std::vector<double> alphas;
  double omega = 1.0;
  std::optional<double> alpha2;  // stage-two alpha; defaults to the stage-one alpha
  /// Per-point budget, split over the five settings (three stage-one inputs,
  /// two stage-two inputs); same convention as the two-state experiment.
  std::uint64_t shots = 30000;
  int trials = 10;
  std::uint64_t seed = 0;
  bool infinite_shots = false;
  int threads = 1;
};

struct ThreeStatePoint {
  double alpha = 0.0;
  double time = 0.0;
  double p1_theory = 1.0, p2_theory = 1.0, p3_theory = 0.0;
  double o31 = 0.0, o32 = 0.0;
  double delta = 0.0, chi = 0.0;
  double p1_mean = 0.0, p1_std = 0.0;
  double p2_mean = 0.0, p2_std = 0.0;
  double p3_mean = 0.0, p3_std = 0.0;
};

/// Two-stage count simulation of the three-state protocol; the reported
/// probabilities are count-ratio estimators conditioned on detection.
std::vector<ThreeStatePoint> experiment_three_state(const ThreeStateExperimentConfig& config);

/// Uniform triple on the parallel-beta circle: gamma_j = 2 pi (j-1) / 3.
std::array<BlochState, 3> uniform_triple(double beta);

}  // namespace ptqsd
