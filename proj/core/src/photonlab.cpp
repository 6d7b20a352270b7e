// SPDX-License-Identifier: Apache-2.0
#include "ptqsd/photonlab.hpp"

#include <algorithm>
#include <cmath>

#include "ptqsd/parallel.hpp"
#include "ptqsd/rng.hpp"

namespace ptqsd {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double effect_probability(const Mat2& rho, const Mat2& effect) {
  return clamp01(((rho) * effect).trace().real());
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return out;
}

// Projector pairs for the three tomography bases, in fixed order Z, X, Y.
// Convention: D = (|H>+|V>)/sqrt(2) has Sx=+1, R = (|H>+i|V>)/sqrt(2) Sy=+1.
struct Basis {
  Mat2 plus, minus;
};

std::array<Basis, 3> tomography_bases() {
  const double is2 = 1.0 / std::sqrt(2.0);
  const Ket2 h{1.0, 0.0}, v{0.0, 1.0};
  const Ket2 d{is2, is2}, a{is2, -is2};
  const Ket2 rr{is2, Complex(0.0, is2)}, ll{is2, Complex(0.0, -is2)};
  return {Basis{outer(h, h), outer(v, v)}, Basis{outer(d, d), outer(a, a)},
          Basis{outer(rr, rr), outer(ll, ll)}};
}

DensityMatrix clamp_physical(const Mat2& rho_raw) {
  const Mat2 herm = Complex(0.5) * (rho_raw + rho_raw.adjoint());
  const EigenHermitian2 e = eigs_hermitian2(herm);
  double l0 = std::max(e.values[0], 0.0);
  double l1 = std::max(e.values[1], 0.0);
  const double tr = l0 + l1;
  if (tr <= 0.0) return DensityMatrix(Complex(0.5) * Mat2::identity());
  l0 /= tr;
  l1 /= tr;
  const Mat2 fixed = Complex(l0) * outer(e.v0, e.v0) + Complex(l1) * outer(e.v1, e.v1);
  return DensityMatrix(fixed);
}

// One RrhoR maximum-likelihood pass over the six projectors. Frequencies are
// relative within each basis; the fixed point maximizes the multinomial
// likelihood of the three separate measurements. The iteration cannot leave
// the support of its starting point, so the start is mixed with identity.
Mat2 mle_refine_rho(const Mat2& start, const std::array<Basis, 3>& bases,
                    const std::array<std::array<double, 2>, 3>& freq) {
  Mat2 rho = Complex(0.9) * start + Complex(0.05) * Mat2::identity();
  for (int iter = 0; iter < 400; ++iter) {
    Mat2 r = Mat2::zero();
    for (int b = 0; b < 3; ++b) {
      const Mat2* pr[2] = {&bases[b].plus, &bases[b].minus};
      for (int k = 0; k < 2; ++k) {
        const double p = effect_probability(rho, *pr[k]);
        if (p < 1e-12) continue;
        r = r + Complex(freq[b][k] / (3.0 * p)) * (*pr[k]);
      }
    }
    Mat2 next = r * rho * r;
    const double tr = next.trace().real();
    if (!(tr > 0.0)) break;
    next = Complex(1.0 / tr) * next;
    const double drift = (next - rho).frobenius_norm();
    rho = next;
    if (drift < 1e-13) break;
  }
  return rho;
}

}  // namespace

CountRecord simulate_counts(const DensityMatrix& state, const std::vector<Mat2>& effects,
                            const std::vector<std::string>& labels, std::uint64_t shots,
                            std::uint64_t seed) {
  if (effects.size() != labels.size())
    throw InvalidParameter("simulate_counts: labels/effects size mismatch");
  if (effects.empty()) throw InvalidParameter("simulate_counts: no effects");

  Mat2 sum = Mat2::zero();
  for (const Mat2& e : effects) {
    if (!e.is_finite()) throw InvalidParameter("simulate_counts: non-finite effect");
    const Mat2 herm = Complex(0.5) * (e + e.adjoint());
    if ((e - herm).frobenius_norm() > 1e-10)
      throw InvalidParameter("simulate_counts: effect not Hermitian");
    if (eigs_hermitian2(herm).values[0] < -1e-10)
      throw InvalidParameter("simulate_counts: effect has a negative eigenvalue");
    sum = sum + e;
  }
  const Mat2 residual = Mat2::identity() - sum;
  if (eigs_hermitian2(Complex(0.5) * (residual + residual.adjoint())).values[0] < -1e-10)
    throw InvalidParameter("simulate_counts: effects exceed identity");

  std::vector<double> probs(effects.size());
  for (std::size_t i = 0; i < effects.size(); ++i)
    probs[i] = effect_probability(state.matrix(), effects[i]);

  CountRecord record;
  record.labels = labels;
  record.labels.emplace_back("lost");
  record.counts.assign(effects.size() + 1, 0);
  record.shots = shots;
  record.seed = seed;

  Rng rng(seed);
  for (std::uint64_t n = 0; n < shots; ++n) ++record.counts[rng.categorical(probs)];
  return record;
}

CountRecord simulate_counts(const Ket2& state, const std::vector<Mat2>& effects,
                            const std::vector<std::string>& labels, std::uint64_t shots,
                            std::uint64_t seed) {
  return simulate_counts(DensityMatrix::pure(state), effects, labels, shots, seed);
}

DissipationEstimate estimate_dissipation(std::uint64_t lost, std::uint64_t detected) {
  const std::uint64_t total = lost + detected;
  if (total == 0) throw InvalidParameter("estimate_dissipation: zero total count");
  DissipationEstimate est;
  est.value = static_cast<double>(lost) / static_cast<double>(total);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(total));
  return est;
}

double TomographyResult::fidelity_to(const DensityMatrix& ref) const {
  // Qubit closed form: F = tr(rho sigma) + 2 sqrt(det rho * det sigma).
  const double cross = (rho.matrix() * ref.matrix()).trace().real();
  const double dets = rho.matrix().det().real() * ref.matrix().det().real();
  return clamp01(cross + 2.0 * std::sqrt(std::max(dets, 0.0)));
}

double TomographyResult::fidelity_to(const Ket2& ref) const {
  const Ket2 u = ref.normalized();
  return clamp01((rho.matrix() * outer(u, u)).trace().real());
}

TomographyResult tomography(const Ket2& state, const TomographyOptions& options) {
  if (!options.infinite_shots && options.shots_per_basis < 1)
    throw InvalidParameter("tomography: shots_per_basis must be >= 1");

  const Ket2 psi = state.normalized();
  const DensityMatrix rho_true = DensityMatrix::pure(psi);
  const auto bases = tomography_bases();

  std::array<double, 3> stokes{};
  std::array<double, 3> stokes_err{};
  std::array<std::array<double, 2>, 3> freq{};

  for (int b = 0; b < 3; ++b) {
    double f_plus;
    if (options.infinite_shots) {
      f_plus = effect_probability(rho_true.matrix(), bases[b].plus);
    } else {
      const CountRecord rec =
          simulate_counts(rho_true, {bases[b].plus, bases[b].minus}, {"plus", "minus"},
                          options.shots_per_basis, substream_seed(options.seed, b));
      f_plus = static_cast<double>(rec.counts[0]) / static_cast<double>(options.shots_per_basis);
      stokes_err[b] = std::sqrt(
          std::max(1.0 - (2.0 * f_plus - 1.0) * (2.0 * f_plus - 1.0), 0.0) /
          static_cast<double>(options.shots_per_basis));
    }
    freq[b] = {f_plus, 1.0 - f_plus};
    stokes[b] = 2.0 * f_plus - 1.0;
  }

  // Basis order is Z, X, Y; assemble rho = (I + Sx X + Sy Y + Sz Z) / 2.
  const double sz = stokes[0], sx = stokes[1], sy = stokes[2];
  Mat2 rho_lin = Complex(0.5) * (Mat2::identity() + Complex(sx) * Mat2::pauli_x() +
                                 Complex(sy) * Mat2::pauli_y() + Complex(sz) * Mat2::pauli_z());

  if (options.mle_refine && !options.infinite_shots)
    rho_lin = mle_refine_rho(clamp_physical(rho_lin).matrix(), bases, freq);

  TomographyResult result{clamp_physical(rho_lin), {sx, sy, sz}, {stokes_err[1], stokes_err[2], stokes_err[0]}};
  return result;
}

std::array<BlochState, 3> uniform_triple(double beta) {
  return {BlochState{beta, 0.0}, BlochState{beta, 2.0 * kPi / 3.0},
          BlochState{beta, 4.0 * kPi / 3.0}};
}

std::vector<TwoStateSweepPoint> experiment_two_state(const TwoStateExperimentConfig& config) {
  if (config.t_grid.empty()) throw InvalidParameter("experiment_two_state: empty time grid");
  if (config.trials < 1) throw InvalidParameter("experiment_two_state: trials must be >= 1");

  const StatePair pair = make_pair(config.epsilon);
  const PtHamiltonian h = hamiltonian_from_strength(config.s, config.omega, config.theta);

  const std::size_t n_points = config.t_grid.size();
  const std::size_t n_trials = static_cast<std::size_t>(config.trials);

  std::vector<TwoStateSweepPoint> points(n_points);
  // trial results, indexed [point][trial]
  std::vector<std::vector<double>> d_trials(n_points, std::vector<double>(n_trials));
  std::vector<std::vector<double>> l1_trials(n_points, std::vector<double>(n_trials));
  std::vector<std::vector<double>> l2_trials(n_points, std::vector<double>(n_trials));

  parallel_for(n_points * n_trials, config.threads, [&](std::size_t task) {
    const std::size_t pi = task / n_trials;
    const std::size_t trial = task % n_trials;
    const double t = config.t_grid[pi];

    const Mat2 v = physical_evolution(propagator(h, t));
    const Ket2 out1 = (v * pair.psi1).normalized();
    const Ket2 out2 = (v * pair.psi2).normalized();

    if (config.infinite_shots) {
      l1_trials[pi][trial] = 1.0 - survival_probability(v, pair.psi1);
      l2_trials[pi][trial] = 1.0 - survival_probability(v, pair.psi2);
      const TomographyOptions exact{0, 0, true, false};
      d_trials[pi][trial] =
          trace_distance(tomography(out1, exact).rho, tomography(out2, exact).rho);
      return;
    }

    const std::uint64_t task_seed = substream_seed(config.seed, task);
    const Mat2 detected_effect = v.adjoint() * v;

    // The point's budget is shared across the error-bar repetitions, and one
    // repetition consumes eight settings.
    const std::uint64_t setting_shots =
        std::max<std::uint64_t>(config.shots / (8 * n_trials), 1);

    const CountRecord c1 = simulate_counts(pair.psi1, {detected_effect}, {"detected"},
                                           setting_shots, substream_seed(task_seed, 0));
    const CountRecord c2 = simulate_counts(pair.psi2, {detected_effect}, {"detected"},
                                           setting_shots, substream_seed(task_seed, 1));
    l1_trials[pi][trial] = estimate_dissipation(c1.counts[1], c1.counts[0]).value;
    l2_trials[pi][trial] = estimate_dissipation(c2.counts[1], c2.counts[0]).value;

    TomographyOptions opt;
    opt.shots_per_basis = setting_shots;
    opt.infinite_shots = false;
    opt.mle_refine = config.mle_refine;
    opt.seed = substream_seed(task_seed, 2);
    const TomographyResult t1 = tomography(out1, opt);
    opt.seed = substream_seed(task_seed, 3);
    const TomographyResult t2 = tomography(out2, opt);
    d_trials[pi][trial] = trace_distance(t1.rho, t2.rho);
  });

  for (std::size_t pi = 0; pi < n_points; ++pi) {
    const double t = config.t_grid[pi];
    TwoStateSweepPoint& point = points[pi];
    point.t = t;

    const Mat2 v = physical_evolution(propagator(h, t));
    const Ket2 out1 = (v * pair.psi1).normalized();
    const Ket2 out2 = (v * pair.psi2).normalized();
    point.inner_product = inner(out1, out2).real();
    point.d_analytic = trace_distance(DensityMatrix::pure(out1), DensityMatrix::pure(out2));
    point.loss1_analytic = 1.0 - survival_probability(v, pair.psi1);
    point.loss2_analytic = 1.0 - survival_probability(v, pair.psi2);

    const MeanStd d = mean_std(d_trials[pi]);
    const MeanStd l1 = mean_std(l1_trials[pi]);
    const MeanStd l2 = mean_std(l2_trials[pi]);
    point.d_mean = d.mean;
    point.d_std = d.std;
    point.loss1_mean = l1.mean;
    point.loss1_std = l1.std;
    point.loss2_mean = l2.mean;
    point.loss2_std = l2.std;
  }
  return points;
}

namespace {

struct StageRatios {
  double h_fraction = 0.0;  // detected-H / detected
  double v_fraction = 0.0;
};

// Detection-conditioned H/V fractions for `input` through channel v with the
// projective basis {basis_h, basis_v} applied after evolution.
StageRatios stage_ratios(const Ket2& input, const Mat2& v, const Ket2& basis_h,
                         const Ket2& basis_v, std::uint64_t shots, std::uint64_t seed,
                         bool infinite_shots) {
  const Mat2 vdag = v.adjoint();
  const Mat2 effect_h = vdag * outer(basis_h, basis_h) * v;
  const Mat2 effect_v = vdag * outer(basis_v, basis_v) * v;

  StageRatios r;
  if (infinite_shots) {
    const DensityMatrix rho = DensityMatrix::pure(input);
    const double ph = effect_probability(rho.matrix(), effect_h);
    const double pv = effect_probability(rho.matrix(), effect_v);
    const double detected = ph + pv;
    if (detected > 0.0) {
      r.h_fraction = ph / detected;
      r.v_fraction = pv / detected;
    }
    return r;
  }

  const CountRecord rec = simulate_counts(input, {effect_h, effect_v}, {"H", "V"}, shots, seed);
  const std::uint64_t detected = rec.counts[0] + rec.counts[1];
  if (detected > 0) {
    r.h_fraction = static_cast<double>(rec.counts[0]) / static_cast<double>(detected);
    r.v_fraction = static_cast<double>(rec.counts[1]) / static_cast<double>(detected);
  }
  return r;
}

}  // namespace

std::vector<ThreeStatePoint> experiment_three_state(const ThreeStateExperimentConfig& config) {
  if (config.alphas.empty()) throw InvalidParameter("experiment_three_state: no alpha values");
  if (config.trials < 1) throw InvalidParameter("experiment_three_state: trials must be >= 1");

  const CanonicalTriple triple =
      canonicalize(config.states[0], config.states[1], config.states[2]);

  const std::size_t n_alpha = config.alphas.size();
  const std::size_t n_trials = static_cast<std::size_t>(config.trials);

  std::vector<ThreeStatePoint> points(n_alpha);
  std::vector<std::vector<double>> p1_trials(n_alpha, std::vector<double>(n_trials));
  std::vector<std::vector<double>> p2_trials(n_alpha, std::vector<double>(n_trials));
  std::vector<std::vector<double>> p3_trials(n_alpha, std::vector<double>(n_trials));

  parallel_for(n_alpha * n_trials, config.threads, [&](std::size_t task) {
    const std::size_t ai = task / n_trials;
    const std::size_t trial = task % n_trials;
    const double alpha = config.alphas[ai];

    const ProtocolResult stage1 = stage_one(triple, alpha, config.omega);
    const StageTwoResult stage2 =
        stage_two(triple, config.alpha2.value_or(alpha), config.omega);

    // Stage-one channel and measurement basis {psi1', perp}.
    const PtHamiltonian h1 = hamiltonian_from_alpha(stage1.alpha, config.omega);
    const Mat2 v1 = physical_evolution(propagator(h1, stage1.time));
    const Ket2 basis_h = stage1.evolved1;
    const Ket2 basis_v = orthonormal_complement(stage1.evolved1);

    // Stage-two channel; psi1 -> first canonical form, psi3 -> second.
    const Mat2 v2 = physical_evolution(propagator(stage2.hamiltonian, stage2.times.t0));
    const Ket2 basis2_h = (v2 * stage2.pair.psi1).normalized();
    const Ket2 basis2_v = orthonormal_complement(basis2_h);

    const std::uint64_t task_seed = substream_seed(config.seed, task);
    // the point's budget is shared across repetitions and its five settings
    const std::uint64_t setting_shots =
        std::max<std::uint64_t>(config.shots / (5 * n_trials), 1);
    const auto ratios1 = [&](const Ket2& in, std::uint64_t k) {
      return stage_ratios(in, v1, basis_h, basis_v, setting_shots,
                          substream_seed(task_seed, k), config.infinite_shots);
    };

    const StageRatios s1_in1 = ratios1(triple.psi1, 0);
    const StageRatios s1_in2 = ratios1(triple.psi2, 1);
    const StageRatios s1_in3 = ratios1(triple.psi3, 2);

    const StageRatios s2_in1 =
        stage_ratios(stage2.pair.psi1, v2, basis2_h, basis2_v, setting_shots,
                     substream_seed(task_seed, 3), config.infinite_shots);
    const StageRatios s2_in3 =
        stage_ratios(stage2.pair.psi2, v2, basis2_h, basis2_v, setting_shots,
                     substream_seed(task_seed, 4), config.infinite_shots);

    p1_trials[ai][trial] = s1_in1.h_fraction * s2_in1.h_fraction;
    p2_trials[ai][trial] = s1_in2.v_fraction;
    p3_trials[ai][trial] = s1_in3.h_fraction * s2_in3.v_fraction;
  });

  for (std::size_t ai = 0; ai < n_alpha; ++ai) {
    ThreeStatePoint& point = points[ai];
    const ProtocolResult stage1 = stage_one(triple, config.alphas[ai], config.omega);
    point.alpha = config.alphas[ai];
    point.time = stage1.time;
    point.p1_theory = stage1.p1;
    point.p2_theory = stage1.p2;
    point.p3_theory = stage1.p3;
    point.o31 = stage1.o31;
    point.o32 = stage1.o32;
    point.delta = stage1.delta;
    point.chi = stage1.chi;

    const MeanStd p1 = mean_std(p1_trials[ai]);
    const MeanStd p2 = mean_std(p2_trials[ai]);
    const MeanStd p3 = mean_std(p3_trials[ai]);
    point.p1_mean = p1.mean;
    point.p1_std = p1.std;
    point.p2_mean = p2.mean;
    point.p2_std = p2.std;
    point.p3_mean = p3.mean;
    point.p3_std = p3.std;
  }
  return points;
}

}  // namespace ptqsd
