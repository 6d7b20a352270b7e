// SPDX-License-Identifier: Apache-2.0
//
// ptqsd command line: desk-scale simulation of quantum state discrimination
// under PT-symmetric (nonunitary) evolution in a lossy linear-optics model.
//
// Exit codes: 0 success, 2 usage/validation error, 3 internal numerical
// failure. Config files are flat `key=value` lines; command-line flags
// override file values.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "csv.hpp"
#include "ptqsd/errors.hpp"

namespace ptqsd::cli {

namespace {

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  const auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidParameter("config line is not key=value: '" + line + "'");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void take_last_everywhere(CLI::App* app) {
  for (CLI::Option* opt : app->get_options(nullptr))
    opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  for (CLI::App* sub : app->get_subcommands(nullptr)) take_last_everywhere(sub);
}

void add_sim_options(CLI::App* sub, CommonSimOptions* sim) {
  sub->add_option("--shots", sim->shots,
                  "Detected-photon budget per data point and trial (split over the "
                  "point's measurement settings)");
  sub->add_option("--trials", sim->trials, "Independent repetitions for the error bars");
  sub->add_option("--seed", sim->seed,
                  "Master RNG seed (default: PTQSD_SEED env var, else 12345)");
  sub->add_flag("--infinite-shots", sim->infinite_shots,
                "Use exact outcome probabilities instead of sampling");
  sub->add_option("--threads", sim->threads, "Worker threads (0 = hardware)");
}

}  // namespace

int run_app(std::vector<std::string> tokens) {
  // Phase one: pull out --config and splice its key=value pairs in right
  // after the subcommand, so later command-line tokens win under TakeLast.
  std::string config_path;
  for (auto it = tokens.begin(); it != tokens.end();) {
    if (*it == "--config") {
      if (std::next(it) == tokens.end())
        throw InvalidParameter("--config requires a file path");
      config_path = *std::next(it);
      it = tokens.erase(it, std::next(it, 2));
    } else if (it->rfind("--config=", 0) == 0) {
      config_path = it->substr(9);
      it = tokens.erase(it);
    } else {
      ++it;
    }
  }

  CLI::App app{
      "ptqsd: quantum state discrimination through PT-symmetric nonunitary evolution.\n"
      "Angles are radians unless --degrees is given; times are in units of 1/omega\n"
      "(omega defaults to 1). CSV output: comma-separated, '.' decimal, header row,\n"
      "LF line endings, 17 significant digits."};
  app.set_version_flag("--version", "ptqsd 0.1.0");
  app.require_subcommand(1);

  const std::uint64_t env_seed = default_seed_from_env();
  int exit_code = 0;

  // --- critical --------------------------------------------------------------
  auto crit = std::make_shared<CriticalOptions>();
  {
    CLI::App* sub = app.add_subcommand(
        "critical", "Critical non-Hermiticity for a given overlap angle epsilon");
    sub->add_option("--epsilon", crit->epsilon, "Overlap angle in (0, pi/2)")->required();
    sub->add_option("--omega", crit->omega, "Half the (fixed) eigenvalue gap");
    sub->add_flag("--degrees", crit->degrees, "Interpret input angles as degrees");
    sub->callback([crit, &exit_code] { exit_code = cmd_critical(*crit); });
  }

  // --- orthogonality ---------------------------------------------------------
  auto orth = std::make_shared<OrthogonalityOptions>();
  {
    CLI::App* sub = app.add_subcommand(
        "orthogonality", "Times at which the evolved pair becomes orthogonal");
    sub->add_option("--epsilon", orth->epsilon, "Overlap angle in (0, pi/2)")->required();
    sub->add_option("--s", orth->s, "Coupling strength (s >= omega)")->required();
    sub->add_option("--omega", orth->omega, "Half the eigenvalue gap");
    CLI::Option* th = sub->add_option("--theta", orth->theta, "Diagonal phase (default pi/2)");
    sub->add_flag("--degrees", orth->degrees, "Interpret input angles as degrees");
    sub->callback([orth, th, &exit_code] {
      orth->theta_given = th->count() > 0;
      exit_code = cmd_orthogonality(*orth);
    });
  }

  // --- pair-evolve -----------------------------------------------------------
  auto pev = std::make_shared<PairEvolveOptions>();
  {
    CLI::App* sub = app.add_subcommand(
        "pair-evolve", "Analytic evolution of the canonical pair over a time grid");
    sub->add_option("--epsilon", pev->epsilon, "Overlap angle in (0, pi/2)")->required();
    sub->add_option("--s", pev->s, "Coupling strength")->required();
    sub->add_option("--omega", pev->omega, "Half the eigenvalue gap");
    CLI::Option* th = sub->add_option("--theta", pev->theta, "Diagonal phase (default pi/2)");
    CLI::Option* t_opt = sub->add_option("--t", pev->t_raw, "Single evolution time");
    sub->add_option("--t-grid", pev->t_grid, "Grid 'start:stop:count' or comma list");
    sub->add_option("--out", pev->out, "Output CSV path (default: stdout)");
    sub->add_flag("--degrees", pev->degrees, "Interpret input angles as degrees");
    sub->footer("CSV columns: " + schema_line(kPairEvolveHeader));
    sub->callback([pev, th, t_opt, &exit_code] {
      pev->theta_given = th->count() > 0;
      if (t_opt->count()) pev->t = pev->t_raw;
      exit_code = cmd_pair_evolve(*pev);
    });
  }

  // --- mutual-info -----------------------------------------------------------
  auto mio = std::make_shared<MutualInfoOptions>();
  {
    CLI::App* sub = app.add_subcommand(
        "mutual-info",
        "Mutual information of the PT discrimination channel vs the USD/MED baselines");
    sub->add_option("--epsilon", mio->epsilon, "Overlap angle in (0, pi/2)")->required();
    CLI::Option* s_opt = sub->add_option("--s", mio->s_raw, "Single coupling strength");
    sub->add_option("--s-grid", mio->s_grid,
                    "Grid 'start:stop:count' or comma list (default: critical..100)");
    sub->add_flag("--log-grid,!--linear-grid", mio->log_grid,
                  "Space the start:stop:count grid logarithmically (default on)");
    sub->add_option("--omega", mio->omega, "Half the eigenvalue gap");
    sub->add_option("--out", mio->out, "Output CSV path (default: stdout)");
    sub->add_flag("--degrees", mio->degrees, "Interpret input angles as degrees");
    sub->footer("CSV columns: " + schema_line(kMutualInfoHeader));
    sub->callback([mio, s_opt, &exit_code] {
      if (s_opt->count()) mio->s = mio->s_raw;
      exit_code = cmd_mutual_info(*mio);
    });
  }

  // --- three-state -----------------------------------------------------------
  auto tso = std::make_shared<ThreeStateOptions>();
  tso->sim.seed = env_seed;
  {
    CLI::App* sub = app.add_subcommand(
        "three-state", "Two-stage discrimination of three nonorthogonal states");
    CLI::Option* beta_opt =
        sub->add_option("--beta", tso->beta_raw, "Uniform-triple parallel angle");
    sub->add_option("--states", tso->states,
                    "Arbitrary triple 'b1,g1;b2,g2;b3,g3' (Bloch angles)");
    sub->add_option("--alpha-list", tso->alpha_list,
                    "Comma list of alpha values; 'crit' expands to alpha_c");
    CLI::Option* a2_opt = sub->add_option("--alpha2", tso->alpha2_raw,
                                          "Stage-two alpha (default: same as stage one)");
    sub->add_option("--omega", tso->omega, "Half the eigenvalue gap");
    sub->add_flag("--monte-carlo", tso->monte_carlo, "Add seeded count-simulation columns");
    add_sim_options(sub, &tso->sim);
    sub->add_option("--out", tso->out, "Output CSV path (default: stdout)");
    sub->add_flag("--degrees", tso->degrees, "Interpret input angles as degrees");
    sub->footer("CSV columns: " + schema_line(kThreeStateHeader) +
                "\nWith --monte-carlo: " + schema_line(kThreeStateMcHeader));
    sub->callback([tso, beta_opt, a2_opt, &exit_code] {
      if (beta_opt->count()) tso->beta = tso->beta_raw;
      if (a2_opt->count()) tso->alpha2 = tso->alpha2_raw;
      exit_code = cmd_three_state(*tso);
    });
  }

  // --- compile ---------------------------------------------------------------
  auto cpo = std::make_shared<CompileOptions>();
  {
    CLI::App* sub = app.add_subcommand(
        "compile", "Compile a propagator into a QWP/HWP/QWP + loss bench recipe");
    sub->add_option("--s", cpo->s, "Coupling strength")->required();
    sub->add_option("--omega", cpo->omega, "Half the eigenvalue gap");
    CLI::Option* th = sub->add_option("--theta", cpo->theta, "Diagonal phase (default pi/2)");
    CLI::Option* t_opt = sub->add_option("--t", cpo->t_raw, "Evolution time to compile");
    CLI::Option* eps_opt = sub->add_option(
        "--epsilon", cpo->epsilon_raw,
        "Overlap angle; picks t = t0(epsilon, s) when --t is absent");
    sub->add_option("--out", cpo->out, "Also write the bench sheet to this file");
    sub->add_option("--json", cpo->json, "Write the structured record to this JSON file");
    sub->add_flag("--degrees", cpo->degrees, "Interpret input angles as degrees");
    sub->callback([cpo, th, t_opt, eps_opt, &exit_code] {
      cpo->theta_given = th->count() > 0;
      if (t_opt->count()) cpo->t = cpo->t_raw;
      if (eps_opt->count()) cpo->epsilon = cpo->epsilon_raw;
      exit_code = cmd_compile(*cpo);
    });
  }

  // --- experiment ------------------------------------------------------------
  auto exo = std::make_shared<ExperimentOptions>();
  exo->sim.seed = env_seed;
  {
    CLI::App* sub = app.add_subcommand(
        "experiment",
        "Seeded Monte-Carlo run: detector counts, tomography, trace distance, dissipation");
    sub->add_option("--epsilon", exo->epsilon, "Overlap angle in (0, pi/2)")->required();
    sub->add_option("--s", exo->s, "Coupling strength")->required();
    sub->add_option("--omega", exo->omega, "Half the eigenvalue gap");
    CLI::Option* th = sub->add_option("--theta", exo->theta, "Diagonal phase (default pi/2)");
    CLI::Option* t_opt = sub->add_option("--t", exo->t_raw, "Single evolution time");
    sub->add_option("--t-grid", exo->t_grid, "Grid 'start:stop:count' or comma list");
    add_sim_options(sub, &exo->sim);
    sub->add_flag("--mle", exo->mle, "Maximum-likelihood tomography refinement");
    sub->add_option("--out", exo->out, "Output CSV path (default: stdout)");
    sub->add_flag("--degrees", exo->degrees, "Interpret input angles as degrees");
    sub->footer("CSV columns: " + schema_line(kExperimentHeader));
    sub->callback([exo, th, t_opt, &exit_code] {
      exo->theta_given = th->count() > 0;
      if (t_opt->count()) exo->t = exo->t_raw;
      exit_code = cmd_experiment(*exo);
    });
  }

  // --- figures ---------------------------------------------------------------
  auto fgo = std::make_shared<FiguresOptions>();
  fgo->sim.seed = env_seed;
  {
    CLI::App* sub = app.add_subcommand(
        "figures", "Reproduce a whole figure preset: CSV + SVG per panel");
    sub->add_option("--preset", fgo->preset, "fig2|fig3|fig4|fig5|fig7|figs2")->required();
    sub->add_option("--outdir", fgo->outdir, "Output directory (created if missing)")
        ->required();
    add_sim_options(sub, &fgo->sim);
    sub->add_option("--grid-points", fgo->grid_points, "Points per analytic curve");
    sub->add_option("--mc-stride", fgo->mc_stride, "Grid stride between Monte-Carlo dots");
    sub->callback([fgo, &exit_code] { exit_code = cmd_figures(*fgo); });
  }

  take_last_everywhere(&app);

  if (!config_path.empty()) {
    // The subcommand must be named on the command line; config supplies values.
    std::string subname;
    CLI::App* sub = nullptr;
    for (const std::string& token : tokens) {
      for (CLI::App* candidate : app.get_subcommands(nullptr)) {
        if (candidate->get_name() == token) {
          subname = token;
          sub = candidate;
          break;
        }
      }
      if (sub) break;
    }
    if (!sub) throw InvalidParameter("--config requires a subcommand on the command line");
    std::vector<std::string> injected;
    for (const auto& [key, value] : load_config_file(config_path)) {
      if (sub->get_option_no_throw("--" + key) != nullptr)
        injected.push_back("--" + key + "=" + value);
      // keys for other subcommands are ignored, so one file can serve several
    }
    auto pos = std::find(tokens.begin(), tokens.end(), subname);
    tokens.insert(std::next(pos), injected.begin(), injected.end());
  }

  std::vector<const char*> argv;
  argv.push_back("ptqsd");
  for (const std::string& t : tokens) argv.push_back(t.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace ptqsd::cli

int main(int argc, char** argv) {
  using namespace ptqsd;
  try {
    return cli::run_app(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotDiscriminating& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateTriple& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NoOrthogonalityTime& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
