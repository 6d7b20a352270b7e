// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "csv.hpp"
#include "ptqsd/optics.hpp"

namespace ptqsd::cli {

namespace {

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file_atomic(out_path, content);
}

double to_rad(double angle, bool degrees) { return degrees ? angle * kPi / 180.0 : angle; }

double theta_of(double theta, bool theta_given, bool degrees) {
  return theta_given ? to_rad(theta, degrees) : theta;
}

double parse_double(const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw InvalidParameter("not a number: '" + token + "'");
  }
  if (used != token.size()) throw InvalidParameter("trailing junk in number: '" + token + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<double> default_period_grid(double omega, int points = 121) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] =
        kPi / omega * static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::uint64_t default_seed_from_env() {
  if (const char* env = std::getenv("PTQSD_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidParameter("PTQSD_SEED is not an unsigned integer");
    }
  }
  return 12345;
}

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) throw InvalidParameter("empty grid spec");
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw InvalidParameter("grid spec must be start:stop:count");
    const double start = parse_double(parts[0]);
    const double stop = parse_double(parts[1]);
    const long count = std::lround(parse_double(parts[2]));
    if (count < 1) throw InvalidParameter("grid count must be >= 1");
    std::vector<double> grid(static_cast<std::size_t>(count));
    if (count == 1) {
      grid[0] = start;
      return grid;
    }
    for (long i = 0; i < count; ++i)
      grid[static_cast<std::size_t>(i)] =
          start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    return grid;
  }
  std::vector<double> grid;
  for (const std::string& item : split(spec, ',')) grid.push_back(parse_double(item));
  if (grid.empty()) throw InvalidParameter("empty grid spec");
  return grid;
}

std::array<BlochState, 3> parse_states(const std::string& spec) {
  const auto groups = split(spec, ';');
  if (groups.size() != 3)
    throw InvalidParameter("--states needs three 'beta,gamma' pairs separated by ';'");
  std::array<BlochState, 3> states{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto pair = split(groups[i], ',');
    if (pair.size() != 2) throw InvalidParameter("--states entries must be 'beta,gamma'");
    states[i] = {parse_double(pair[0]), parse_double(pair[1])};
  }
  return states;
}

// ---------------------------------------------------------------------------

int cmd_critical(const CriticalOptions& opt) {
  const double epsilon = to_rad(opt.epsilon, opt.degrees);
  const double alpha_c = critical_alpha(epsilon);
  const double s_crit = opt.omega / std::cos(alpha_c);
  std::printf("epsilon = %s\n", format_value(epsilon).c_str());
  std::printf("sin_alpha_c = %s\n", format_value(std::sin(alpha_c)).c_str());
  std::printf("alpha_c = %s\n", format_value(alpha_c).c_str());
  std::printf("s_crit = %s\n", format_value(s_crit).c_str());
  std::printf("t0 = t1 = %s\n", format_value(kPi / (2.0 * opt.omega)).c_str());
  return 0;
}

int cmd_orthogonality(const OrthogonalityOptions& opt) {
  const double epsilon = to_rad(opt.epsilon, opt.degrees);
  const double theta = theta_of(opt.theta, opt.theta_given, opt.degrees);
  const PtHamiltonian h = hamiltonian_from_strength(opt.s, opt.omega, theta);
  const auto times = orthogonality_times(epsilon, h);
  if (!times) {
    std::printf("no orthogonality time (s below the critical value for this epsilon)\n");
    return 0;
  }
  std::printf("t0 = %s\n", format_value(times->t0).c_str());
  std::printf("t1 = %s\n", format_value(times->t1).c_str());
  return 0;
}

const std::vector<std::string> kPairEvolveHeader = {
    "t",              "inner_product_raw", "inner_product_renormalized",
    "trace_distance", "survival1",         "survival2",
    "dissipation1",   "dissipation2"};

int cmd_pair_evolve(const PairEvolveOptions& opt) {
  const double epsilon = to_rad(opt.epsilon, opt.degrees);
  const double theta = theta_of(opt.theta, opt.theta_given, opt.degrees);
  const StatePair pair = make_pair(epsilon);
  const PtHamiltonian h = hamiltonian_from_strength(opt.s, opt.omega, theta);

  std::vector<double> grid;
  if (opt.t)
    grid.push_back(*opt.t);
  else if (!opt.t_grid.empty())
    grid = parse_grid(opt.t_grid);
  else
    grid = default_period_grid(opt.omega);

  std::vector<CsvRow> rows;
  rows.reserve(grid.size());
  for (double t : grid) {
    const Mat2 v = physical_evolution(propagator(h, t));
    const Ket2 out1 = (v * pair.psi1).normalized();
    const Ket2 out2 = (v * pair.psi2).normalized();
    const double s1 = survival_probability(v, pair.psi1);
    const double s2 = survival_probability(v, pair.psi2);
    rows.push_back(CsvRow{t, evolved_inner_product(pair, h, t).real(), inner(out1, out2).real(),
                          trace_distance(DensityMatrix::pure(out1), DensityMatrix::pure(out2)),
                          s1, s2, 1.0 - s1, 1.0 - s2});
  }
  emit(render_csv(kPairEvolveHeader, rows), opt.out);
  return 0;
}

const std::vector<std::string> kMutualInfoHeader = {
    "s", "alpha", "t0", "mutual_info_pt", "usd_baseline", "med_baseline"};

int cmd_mutual_info(const MutualInfoOptions& opt) {
  const double epsilon = to_rad(opt.epsilon, opt.degrees);

  std::vector<double> s_values;
  if (opt.s) {
    s_values.push_back(*opt.s);
  } else {
    std::string spec = opt.s_grid;
    if (spec.empty()) {
      const double s_crit = opt.omega / std::cos(critical_alpha(epsilon));
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%.17g:%.17g:61", s_crit, 100.0 * opt.omega);
      spec = buf;
    }
    s_values = parse_grid(spec);
    if (opt.log_grid && s_values.size() > 2) {
      // reinterpret the evenly spaced grid as log-spaced between its endpoints
      const double lo = s_values.front(), hi = s_values.back();
      if (lo <= 0.0) throw InvalidParameter("log grid needs positive endpoints");
      const std::size_t n = s_values.size();
      for (std::size_t i = 0; i < n; ++i)
        s_values[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    }
  }

  const StatePair pair = make_pair(epsilon);
  const DensityMatrix rho1 = DensityMatrix::pure(pair.psi1);
  const DensityMatrix rho2 = DensityMatrix::pure(pair.psi2);
  const double usd = usd_baseline(epsilon);
  const double med = med_baseline(epsilon);

  std::vector<CsvRow> rows;
  for (double s : s_values) {
    const PtHamiltonian h = hamiltonian_from_strength(s, opt.omega);
    const auto times = orthogonality_times(epsilon, h);
    CsvRow row{s, h.alpha, std::nullopt, std::nullopt, usd, med};
    if (times) {
      row[2] = times->t0;
      row[3] = mutual_information(discrimination_povm(pair, h, times->t0), rho1, rho2);
    }
    rows.push_back(row);
  }
  emit(render_csv(kMutualInfoHeader, rows), opt.out);
  return 0;
}

const std::vector<std::string> kThreeStateHeader = {
    "alpha", "t", "p1_theory", "p2_theory", "p3_theory", "o31", "o32", "delta", "chi"};
const std::vector<std::string> kThreeStateMcHeader = {
    "alpha",      "t",         "p1_theory",  "p2_theory", "p3_theory",  "o31",       "o32",
    "delta",      "chi",       "p1_mc_mean", "p1_mc_std", "p2_mc_mean", "p2_mc_std",
    "p3_mc_mean", "p3_mc_std"};

int cmd_three_state(const ThreeStateOptions& opt) {
  std::array<BlochState, 3> states{};
  if (opt.beta && !opt.states.empty())
    throw InvalidParameter("three-state: give either --beta or --states, not both");
  if (opt.beta) {
    states = uniform_triple(to_rad(*opt.beta, opt.degrees));
  } else if (!opt.states.empty()) {
    states = parse_states(opt.states);
    for (BlochState& state : states) {
      state.beta = to_rad(state.beta, opt.degrees);
      state.gamma = to_rad(state.gamma, opt.degrees);
    }
  } else {
    throw InvalidParameter("three-state: one of --beta or --states is required");
  }

  const CanonicalTriple triple = canonicalize(states[0], states[1], states[2]);
  const double alpha_c = critical_alpha(triple.eps12);

  std::vector<double> alphas;
  for (const std::string& token : split(opt.alpha_list.empty() ? "crit" : opt.alpha_list, ',')) {
    if (token == "crit" || token == "critical")
      alphas.push_back(alpha_c);
    else
      alphas.push_back(to_rad(parse_double(token), opt.degrees));
  }

  std::ostream& info = opt.out.empty() ? std::cerr : std::cout;
  info << "eps12 = " << format_value(triple.eps12) << "\n";
  info << "mu = " << format_value(triple.mu) << "\n";
  info << "nu = " << format_value(triple.nu) << "\n";
  info << "alpha_c = " << format_value(alpha_c) << "\n";

  std::vector<CsvRow> rows;
  if (!opt.monte_carlo) {
    for (double alpha : alphas) {
      const ProtocolResult r = stage_one(triple, alpha, opt.omega);
      rows.push_back(CsvRow{r.alpha, r.time, r.p1, r.p2, r.p3, r.o31, r.o32, r.delta, r.chi});
    }
    emit(render_csv(kThreeStateHeader, rows), opt.out);
    return 0;
  }

  ThreeStateExperimentConfig config;
  config.states = states;
  config.alphas = alphas;
  config.omega = opt.omega;
  if (opt.alpha2) config.alpha2 = to_rad(*opt.alpha2, opt.degrees);
  config.shots = opt.sim.shots;
  config.trials = opt.sim.trials;
  config.seed = opt.sim.seed;
  config.infinite_shots = opt.sim.infinite_shots;
  config.threads = resolve_threads(opt.sim.threads);
  for (const ThreeStatePoint& p : experiment_three_state(config)) {
    rows.push_back(CsvRow{p.alpha, p.time, p.p1_theory, p.p2_theory, p.p3_theory, p.o31, p.o32,
                          p.delta, p.chi, p.p1_mean, p.p1_std, p.p2_mean, p.p2_std, p.p3_mean,
                          p.p3_std});
  }
  emit(render_csv(kThreeStateMcHeader, rows), opt.out);
  return 0;
}

namespace {

nlohmann::json json_complex(Complex z) { return {z.real(), z.imag()}; }

nlohmann::json json_matrix(const Mat2& m) {
  return {json_complex(m.m00), json_complex(m.m01), json_complex(m.m10), json_complex(m.m11)};
}

}  // namespace

int cmd_compile(const CompileOptions& opt) {
  const double theta = theta_of(opt.theta, opt.theta_given, opt.degrees);
  const PtHamiltonian h = hamiltonian_from_strength(opt.s, opt.omega, theta);

  double t = 0.0;
  if (opt.t) {
    t = *opt.t;
  } else if (opt.epsilon) {
    const auto times = orthogonality_times(to_rad(*opt.epsilon, opt.degrees), h);
    if (!times)
      throw InvalidParameter("compile: no orthogonality time for this epsilon/s; give --t");
    t = times->t0;
  } else {
    throw InvalidParameter("compile: one of --t or --epsilon is required");
  }

  const Propagator prop = propagator(h, t);
  const optics::LossyDecomposition dec = optics::decompose_lossy(prop.matrix);
  const optics::BenchSheet sheet = optics::bench_sheet(dec);

  emit(sheet.text, opt.out);
  if (!opt.out.empty()) std::cout << sheet.text;

  if (!opt.json.empty()) {
    const double rec_err = (optics::lossy_reconstruct(dec) - prop.matrix).frobenius_norm();
    nlohmann::json j;
    j["input"] = {{"s", opt.s}, {"omega", opt.omega}, {"theta", theta}, {"t", t}};
    if (opt.epsilon) j["input"]["epsilon"] = to_rad(*opt.epsilon, opt.degrees);
    j["propagator"] = {{"matrix", json_matrix(prop.matrix)},
                       {"sigma_max", prop.sigma_max},
                       {"phase", json_complex(prop.phase)}};
    j["decomposition"] = {{"c", json_complex(dec.c)},
                          {"loss", dec.loss},
                          {"hwp_loss_angle", dec.hwp_loss_angle},
                          {"t_unitary", json_matrix(dec.t_unitary)},
                          {"w_unitary", json_matrix(dec.w_unitary)},
                          {"reconstruction_error", rec_err}};
    j["w_plates"] = {{"q1", sheet.w_plates.q1_angle},
                     {"h", sheet.w_plates.h_angle},
                     {"q2", sheet.w_plates.q2_angle}};
    j["t_plates"] = {{"q1", sheet.t_plates.q1_angle},
                     {"h", sheet.t_plates.h_angle},
                     {"q2", sheet.t_plates.q2_angle}};
    j["elements"] = nlohmann::json::array();
    for (const auto& el : sheet.elements) {
      j["elements"].push_back({{"stage", el.stage},
                               {"kind", el.kind},
                               {"angle_rad", el.angle},
                               {"angle_deg", el.angle * 180.0 / kPi},
                               {"active", el.active}});
    }
    write_file_atomic(opt.json, j.dump(2) + "\n");
  }
  return 0;
}

const std::vector<std::string> kExperimentHeader = {
    "t",
    "inner_product",
    "d_analytic",
    "d_mc_mean",
    "d_mc_std",
    "loss1_analytic",
    "loss1_mc_mean",
    "loss1_mc_std",
    "loss2_analytic",
    "loss2_mc_mean",
    "loss2_mc_std"};

int cmd_experiment(const ExperimentOptions& opt) {
  TwoStateExperimentConfig config;
  config.epsilon = to_rad(opt.epsilon, opt.degrees);
  config.s = opt.s;
  config.omega = opt.omega;
  config.theta = theta_of(opt.theta, opt.theta_given, opt.degrees);
  if (opt.t)
    config.t_grid = {*opt.t};
  else if (!opt.t_grid.empty())
    config.t_grid = parse_grid(opt.t_grid);
  else
    config.t_grid = default_period_grid(opt.omega, 25);
  config.shots = opt.sim.shots;
  config.trials = opt.sim.trials;
  config.seed = opt.sim.seed;
  config.infinite_shots = opt.sim.infinite_shots;
  config.mle_refine = opt.mle;
  config.threads = resolve_threads(opt.sim.threads);

  std::vector<CsvRow> rows;
  for (const TwoStateSweepPoint& p : experiment_two_state(config)) {
    rows.push_back(CsvRow{p.t, p.inner_product, p.d_analytic, p.d_mean, p.d_std,
                          p.loss1_analytic, p.loss1_mean, p.loss1_std, p.loss2_analytic,
                          p.loss2_mean, p.loss2_std});
  }
  emit(render_csv(kExperimentHeader, rows), opt.out);
  return 0;
}

}  // namespace ptqsd::cli
