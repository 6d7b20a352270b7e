// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptqsd/photonlab.hpp"

namespace ptqsd::cli {

// Option structs mirror the CLI surface. `*_raw` fields are plain binding
// targets for optional scalar flags; the dispatcher moves them into the
// std::optional members when the flag was actually given. Angle inputs are
// radians unless `degrees` is set; each command converts on entry.

struct CommonSimOptions {
  std::uint64_t shots = 30000;
  int trials = 10;
  std::uint64_t seed = 0;
  bool infinite_shots = false;
  int threads = 0;  // 0 = hardware concurrency
};

int resolve_threads(int requested);
std::uint64_t default_seed_from_env();

/// "a:b:n" (n inclusive points from a to b) or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec);

/// "b1,g1;b2,g2;b3,g3"
std::array<BlochState, 3> parse_states(const std::string& spec);

struct CriticalOptions {
  double epsilon = 0.0;
  double omega = 1.0;
  bool degrees = false;
};
int cmd_critical(const CriticalOptions& opt);

struct OrthogonalityOptions {
  double epsilon = 0.0;
  double s = 0.0;
  double omega = 1.0;
  double theta = kPi / 2;
  bool theta_given = false;
  bool degrees = false;
};
int cmd_orthogonality(const OrthogonalityOptions& opt);

struct PairEvolveOptions {
  double epsilon = 0.0;
  double s = 0.0;
  double omega = 1.0;
  double theta = kPi / 2;
  bool theta_given = false;
  std::optional<double> t;
  double t_raw = 0.0;
  std::string t_grid;  // empty -> one period, 121 points
  std::string out;     // empty -> stdout
  bool degrees = false;
};
int cmd_pair_evolve(const PairEvolveOptions& opt);
extern const std::vector<std::string> kPairEvolveHeader;

struct MutualInfoOptions {
  double epsilon = 0.0;
  std::optional<double> s;
  double s_raw = 0.0;
  std::string s_grid;  // "a:b:n" (log-spaced when --log-grid)
  bool log_grid = true;
  double omega = 1.0;
  std::string out;
  bool degrees = false;
};
int cmd_mutual_info(const MutualInfoOptions& opt);
extern const std::vector<std::string> kMutualInfoHeader;

struct ThreeStateOptions {
  std::optional<double> beta;
  double beta_raw = 0.0;
  std::string states;      // alternative to --beta
  std::string alpha_list;  // comma list; the token "crit" expands to alpha_c
  double omega = 1.0;
  std::optional<double> alpha2;
  double alpha2_raw = 0.0;
  CommonSimOptions sim;
  bool monte_carlo = false;
  std::string out;
  bool degrees = false;
};
int cmd_three_state(const ThreeStateOptions& opt);
extern const std::vector<std::string> kThreeStateHeader;
extern const std::vector<std::string> kThreeStateMcHeader;

struct CompileOptions {
  double s = 0.0;
  double omega = 1.0;
  double theta = kPi / 2;
  bool theta_given = false;
  std::optional<double> t;
  double t_raw = 0.0;
  std::optional<double> epsilon;  // used to pick t = t0 when --t is absent
  double epsilon_raw = 0.0;
  std::string out;   // bench sheet text file
  std::string json;  // structured record
  bool degrees = false;
};
int cmd_compile(const CompileOptions& opt);

struct ExperimentOptions {
  double epsilon = 0.0;
  double s = 0.0;
  double omega = 1.0;
  double theta = kPi / 2;
  bool theta_given = false;
  std::optional<double> t;
  double t_raw = 0.0;
  std::string t_grid;
  CommonSimOptions sim;
  bool mle = false;
  std::string out;
  bool degrees = false;
};
int cmd_experiment(const ExperimentOptions& opt);
extern const std::vector<std::string> kExperimentHeader;

struct FiguresOptions {
  std::string preset;  // fig2|fig3|fig4|fig5|fig7|figs2
  std::string outdir;
  CommonSimOptions sim;
  int grid_points = 121;
  int mc_stride = 8;
};
int cmd_figures(const FiguresOptions& opt);

int run_app(std::vector<std::string> tokens);

}  // namespace ptqsd::cli
