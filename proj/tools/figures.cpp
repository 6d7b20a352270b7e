// SPDX-License-Identifier: Apache-2.0
//
// Figure presets: each panel is one CSV (analytic curves plus seeded
// Monte-Carlo points with error bars) and one SVG rendered from the same data.
#include <cmath>
#include <filesystem>
#include <map>

#include <json.hpp>

#include "commands.hpp"
#include "csv.hpp"
#include "ptqsd/rng.hpp"
#include "svg_plot.hpp"

namespace ptqsd::cli {

namespace {

namespace fs = std::filesystem;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] =
        lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

struct PanelFiles {
  std::string csv;
  std::string svg;
};

PanelFiles panel_files(const std::string& outdir, const std::string& name) {
  return {(fs::path(outdir) / (name + ".csv")).string(),
          (fs::path(outdir) / (name + ".svg")).string()};
}

// One fig2/fig3-style panel: trace distance and dissipations over a period,
// with Monte-Carlo dots every `stride` grid points.
void time_evolution_panel(const std::string& outdir, const std::string& name, double epsilon,
                          double s, const FiguresOptions& opt, std::uint64_t seed) {
  const StatePair pair = make_pair(epsilon);
  const PtHamiltonian h = hamiltonian_from_strength(s);
  const std::vector<double> grid = linspace(0.0, kPi, opt.grid_points);

  std::vector<double> mc_times;
  std::vector<std::size_t> mc_index;
  for (std::size_t i = 0; i < grid.size(); i += static_cast<std::size_t>(opt.mc_stride)) {
    mc_times.push_back(grid[i]);
    mc_index.push_back(i);
  }

  TwoStateExperimentConfig config;
  config.epsilon = epsilon;
  config.s = s;
  config.t_grid = mc_times;
  config.shots = opt.sim.shots;
  config.trials = opt.sim.trials;
  config.seed = seed;
  config.infinite_shots = opt.sim.infinite_shots;
  config.threads = resolve_threads(opt.sim.threads);
  const std::vector<TwoStateSweepPoint> mc = experiment_two_state(config);

  const std::vector<std::string> header = {
      "t",           "inner_product", "trace_distance", "dissipation1", "dissipation2",
      "d_mc_mean",   "d_mc_std",      "loss1_mc_mean",  "loss1_mc_std", "loss2_mc_mean",
      "loss2_mc_std"};

  std::vector<CsvRow> rows;
  std::map<std::size_t, const TwoStateSweepPoint*> mc_at;
  for (std::size_t k = 0; k < mc_index.size(); ++k) mc_at[mc_index[k]] = &mc[k];

  std::vector<double> ts, ds, l1s, l2s;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const Mat2 v = physical_evolution(propagator(h, t));
    const Ket2 out1 = (v * pair.psi1).normalized();
    const Ket2 out2 = (v * pair.psi2).normalized();
    const double d = trace_distance(DensityMatrix::pure(out1), DensityMatrix::pure(out2));
    const double loss1 = 1.0 - survival_probability(v, pair.psi1);
    const double loss2 = 1.0 - survival_probability(v, pair.psi2);
    ts.push_back(t);
    ds.push_back(d);
    l1s.push_back(loss1);
    l2s.push_back(loss2);

    CsvRow row{t, inner(out1, out2).real(), d, loss1, loss2,
               std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
               std::nullopt};
    if (auto it = mc_at.find(i); it != mc_at.end()) {
      row[5] = it->second->d_mean;
      row[6] = it->second->d_std;
      row[7] = it->second->loss1_mean;
      row[8] = it->second->loss1_std;
      row[9] = it->second->loss2_mean;
      row[10] = it->second->loss2_std;
    }
    rows.push_back(row);
  }

  const PanelFiles files = panel_files(outdir, name);
  write_file_atomic(files.csv, render_csv(header, rows));

  std::vector<Series> series;
  series.push_back({"D", ts, ds, {}, "#000000", true, false, false});
  series.push_back({"loss 1", ts, l1s, {}, "#cc0000", true, false, false});
  series.push_back({"loss 2", ts, l2s, {}, "#0044cc", true, false, false});
  Series d_pts{"D (MC)", {}, {}, {}, "#000000", false, true, false};
  Series l1_pts{"", {}, {}, {}, "#cc0000", false, true, false};
  Series l2_pts{"", {}, {}, {}, "#0044cc", false, true, false};
  for (const auto& p : mc) {
    d_pts.x.push_back(p.t);
    d_pts.y.push_back(p.d_mean);
    d_pts.yerr.push_back(p.d_std);
    l1_pts.x.push_back(p.t);
    l1_pts.y.push_back(p.loss1_mean);
    l1_pts.yerr.push_back(p.loss1_std);
    l2_pts.x.push_back(p.t);
    l2_pts.y.push_back(p.loss2_mean);
    l2_pts.yerr.push_back(p.loss2_std);
  }
  series.push_back(d_pts);
  series.push_back(l1_pts);
  series.push_back(l2_pts);

  PlotSpec spec;
  spec.title = name + "  (s = " + format_value(s) + ")";
  spec.xlabel = "t";
  spec.ylabel = "trace distance / dissipation";
  spec.ymin = 0.0;
  spec.ymax = 1.05;
  write_svg_plot(files.svg, spec, series);
}

void figure_time_evolution(const std::string& outdir, const std::string& stem, double epsilon,
                           const FiguresOptions& opt) {
  const double s_crit = 1.0 / std::cos(critical_alpha(epsilon));
  const double panels[3] = {1.1, 3.0, s_crit};
  const char suffix[3] = {'a', 'b', 'c'};
  for (int i = 0; i < 3; ++i)
    time_evolution_panel(outdir, stem + suffix[i], epsilon, panels[i], opt,
                         substream_seed(opt.sim.seed, static_cast<std::uint64_t>(i)));
}

void figure4(const std::string& outdir, const FiguresOptions& opt) {
  const double epsilon = kPi / 3;
  const double s_crit = 1.0 / std::cos(critical_alpha(epsilon));

  // Panel (a): the locus of orthogonality times over s.
  {
    std::vector<double> s_grid = logspace(s_crit, 40.0, opt.grid_points);
    s_grid[0] = s_crit;
    std::vector<CsvRow> rows;
    std::vector<double> ss, t0s, t1s;
    for (double s : s_grid) {
      const auto times = orthogonality_times(epsilon, hamiltonian_from_strength(s));
      CsvRow row{s, std::nullopt, std::nullopt};
      if (times) {
        row[1] = times->t0;
        row[2] = times->t1;
        ss.push_back(s);
        t0s.push_back(times->t0);
        t1s.push_back(times->t1);
      }
      rows.push_back(row);
    }
    const PanelFiles files = panel_files(outdir, "fig4a");
    write_file_atomic(files.csv, render_csv({"s", "t0", "t1"}, rows));
    PlotSpec spec;
    spec.title = "orthogonality-time locus";
    spec.xlabel = "s";
    spec.ylabel = "t";
    write_svg_plot(files.svg, spec,
                   {{"t0", ss, t0s, {}, "#000000", true, false, false},
                    {"t1", ss, t1s, {}, "#000000", true, false, true}});
  }

  // Panel (b): Monte-Carlo trace distance at the orthogonality times.
  {
    const int n_s = 15;
    std::vector<double> s_grid = logspace(s_crit, 40.0, n_s);
    s_grid[0] = s_crit;
    std::vector<CsvRow> rows;
    std::vector<double> ss, d0m, d0e, d1m, d1e;
    double typical_sum = 0.0, typical_err = 0.0;
    int typical_n = 0;
    for (int i = 0; i < n_s; ++i) {
      const double s = s_grid[static_cast<std::size_t>(i)];
      const auto times = orthogonality_times(epsilon, hamiltonian_from_strength(s));
      TwoStateExperimentConfig config;
      config.epsilon = epsilon;
      config.s = s;
      config.t_grid = {times->t0, times->t1};
      config.shots = opt.sim.shots;
      config.trials = opt.sim.trials;
      config.seed = substream_seed(opt.sim.seed, 100 + static_cast<std::uint64_t>(i));
      config.infinite_shots = opt.sim.infinite_shots;
      config.threads = resolve_threads(opt.sim.threads);
      const auto mc = experiment_two_state(config);
      rows.push_back(CsvRow{s, times->t0, mc[0].d_mean, mc[0].d_std, times->t1, mc[1].d_mean,
                            mc[1].d_std});
      ss.push_back(s);
      d0m.push_back(mc[0].d_mean);
      d0e.push_back(mc[0].d_std);
      d1m.push_back(mc[1].d_mean);
      d1e.push_back(mc[1].d_std);
      typical_sum += mc[0].d_mean + mc[1].d_mean;
      typical_err += mc[0].d_std + mc[1].d_std;
      typical_n += 2;
    }
    const PanelFiles files = panel_files(outdir, "fig4b");
    write_file_atomic(files.csv,
                      render_csv({"s", "t0", "d0_mc_mean", "d0_mc_std", "t1", "d1_mc_mean",
                                  "d1_mc_std"},
                                 rows));
    PlotSpec spec;
    spec.title = "measured D at the orthogonality times";
    spec.xlabel = "s";
    spec.ylabel = "D";
    write_svg_plot(files.svg, spec,
                   {{"D(t0)", ss, d0m, d0e, "#000000", false, true, false},
                    {"D(t1)", ss, d1m, d1e, "#888888", false, true, false}});

    nlohmann::json j;
    j["typical_d_mean"] = typical_sum / typical_n;
    j["typical_d_std"] = typical_err / typical_n;
    write_file_atomic((fs::path(outdir) / "fig4_summary.json").string(), j.dump(2) + "\n");
  }
}

// Plug-in mutual information from counted outcomes of both input states.
double empirical_mutual_information(const DiscriminationPovm& povm, const DensityMatrix& rho1,
                                    const DensityMatrix& rho2, std::uint64_t shots,
                                    std::uint64_t seed) {
  const std::vector<Mat2> effects = {povm.pi2, povm.pi3};  // residual = pi1 (loss)
  const CountRecord c1 = simulate_counts(rho1, effects, {"out1", "out2"}, shots,
                                         substream_seed(seed, 0));
  const CountRecord c2 = simulate_counts(rho2, effects, {"out1", "out2"}, shots,
                                         substream_seed(seed, 1));
  double info = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double f1 = static_cast<double>(c1.counts[static_cast<std::size_t>(j)]) /
                      static_cast<double>(shots);
    const double f2 = static_cast<double>(c2.counts[static_cast<std::size_t>(j)]) /
                      static_cast<double>(shots);
    const double q = 0.5 * (f1 + f2);
    if (f1 > 0.0) info += 0.5 * f1 * std::log2(f1 / q);
    if (f2 > 0.0) info += 0.5 * f2 * std::log2(f2 / q);
  }
  return info;
}

void figure5(const std::string& outdir, const FiguresOptions& opt) {
  const double epsilon = kPi / 3;
  const double s_crit = 1.0 / std::cos(critical_alpha(epsilon));
  const StatePair pair = make_pair(epsilon);
  const DensityMatrix rho1 = DensityMatrix::pure(pair.psi1);
  const DensityMatrix rho2 = DensityMatrix::pure(pair.psi2);
  const double usd = usd_baseline(epsilon);
  const double med = med_baseline(epsilon);

  std::vector<double> s_grid = logspace(s_crit, 100.0, opt.grid_points);
  s_grid[0] = s_crit;

  std::vector<CsvRow> rows;
  std::vector<double> ss, mis, mcm, mce;
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    const double s = s_grid[i];
    const PtHamiltonian h = hamiltonian_from_strength(s);
    const auto times = orthogonality_times(epsilon, h);
    const DiscriminationPovm povm = discrimination_povm(pair, h, times->t0);
    const double mi = mutual_information(povm, rho1, rho2);

    double mean = mi, stdev = 0.0;
    if (!opt.sim.infinite_shots) {
      std::vector<double> vals(static_cast<std::size_t>(opt.sim.trials));
      for (int k = 0; k < opt.sim.trials; ++k)
        vals[static_cast<std::size_t>(k)] = empirical_mutual_information(
            povm, rho1, rho2, opt.sim.shots,
            substream_seed(opt.sim.seed, 1000 + i * 100 + static_cast<std::uint64_t>(k)));
      double sum = 0.0;
      for (double v : vals) sum += v;
      mean = sum / static_cast<double>(vals.size());
      double ss2 = 0.0;
      for (double v : vals) ss2 += (v - mean) * (v - mean);
      stdev = vals.size() > 1 ? std::sqrt(ss2 / static_cast<double>(vals.size() - 1)) : 0.0;
    }

    rows.push_back(CsvRow{s, h.alpha, times->t0, mi, usd, med, mean, stdev});
    ss.push_back(s);
    mis.push_back(mi);
    mcm.push_back(mean);
    mce.push_back(stdev);
  }

  const PanelFiles files = panel_files(outdir, "fig5");
  write_file_atomic(files.csv,
                    render_csv({"s", "alpha", "t0", "mutual_info_pt", "usd_baseline",
                                "med_baseline", "mi_mc_mean", "mi_mc_std"},
                               rows));

  PlotSpec spec;
  spec.title = "mutual information vs s";
  spec.xlabel = "s";
  spec.ylabel = "bits";
  write_svg_plot(files.svg, spec,
                 {{"PT", ss, mis, {}, "#000000", true, false, false},
                  {"USD", {ss.front(), ss.back()}, {usd, usd}, {}, "#0044cc", true, false, true},
                  {"MED", {ss.front(), ss.back()}, {med, med}, {}, "#cc00cc", true, false, true},
                  {"PT (MC)", ss, mcm, mce, "#000000", false, true, false}});

  nlohmann::json j;
  j["crossing_s"] = s_crit;
  j["mi_at_crossing"] = mutual_information(
      discrimination_povm(pair, hamiltonian_from_strength(s_crit), kPi / 2), rho1, rho2);
  j["usd_baseline"] = usd;
  j["med_baseline"] = med;
  write_file_atomic((fs::path(outdir) / "fig5_summary.json").string(), j.dump(2) + "\n");
}

void figure7_panel(const std::string& outdir, const std::string& name, double beta,
                   const FiguresOptions& opt, std::uint64_t seed) {
  const auto states = uniform_triple(beta);
  const CanonicalTriple triple = canonicalize(states[0], states[1], states[2]);
  const double alpha_c = critical_alpha(triple.eps12);

  ThreeStateExperimentConfig config;
  config.states = states;
  config.alphas = {alpha_c, 0.8, 1.2, 1.5};
  config.shots = opt.sim.shots;
  config.trials = opt.sim.trials;
  config.seed = seed;
  config.infinite_shots = opt.sim.infinite_shots;
  config.threads = resolve_threads(opt.sim.threads);
  const auto points = experiment_three_state(config);

  std::vector<CsvRow> rows;
  std::vector<double> as, p1t, p2t, p3t, p1m, p1e, p2m, p2e, p3m, p3e;
  for (const auto& p : points) {
    rows.push_back(CsvRow{p.alpha, p.time, p.p1_theory, p.p2_theory, p.p3_theory, p.o31, p.o32,
                          p.p1_mean, p.p1_std, p.p2_mean, p.p2_std, p.p3_mean, p.p3_std});
    as.push_back(p.alpha);
    p1t.push_back(p.p1_theory);
    p2t.push_back(p.p2_theory);
    p3t.push_back(p.p3_theory);
    p1m.push_back(p.p1_mean);
    p1e.push_back(p.p1_std);
    p2m.push_back(p.p2_mean);
    p2e.push_back(p.p2_std);
    p3m.push_back(p.p3_mean);
    p3e.push_back(p.p3_std);
  }

  const PanelFiles files = panel_files(outdir, name);
  write_file_atomic(files.csv,
                    render_csv({"alpha", "t", "p1_theory", "p2_theory", "p3_theory", "o31",
                                "o32", "p1_mc_mean", "p1_mc_std", "p2_mc_mean", "p2_mc_std",
                                "p3_mc_mean", "p3_mc_std"},
                               rows));
  PlotSpec spec;
  spec.title = name + "  (beta = " + format_value(beta) + ")";
  spec.xlabel = "alpha";
  spec.ylabel = "probability of the correct result";
  spec.ymin = 0.0;
  spec.ymax = 1.1;
  write_svg_plot(files.svg, spec,
                 {{"P1 theory", as, p1t, {}, "#000000", true, false, false},
                  {"P2 theory", as, p2t, {}, "#0044cc", true, false, false},
                  {"P3 theory", as, p3t, {}, "#cc0000", true, false, false},
                  {"P1 MC", as, p1m, p1e, "#000000", false, true, false},
                  {"P2 MC", as, p2m, p2e, "#0044cc", false, true, false},
                  {"P3 MC", as, p3m, p3e, "#cc0000", false, true, false}});
}

void figureS2_panel(const std::string& outdir, const std::string& name, double beta,
                    const FiguresOptions& opt) {
  const auto states = uniform_triple(beta);
  const CanonicalTriple triple = canonicalize(states[0], states[1], states[2]);
  const double alpha_c = critical_alpha(triple.eps12);
  const std::vector<double> alphas = linspace(alpha_c, kPi / 2 - 0.01, opt.grid_points);

  std::vector<CsvRow> rows;
  std::vector<double> as, o31s, o32s;
  for (double alpha : alphas) {
    const ProtocolResult r = stage_one(triple, alpha);
    rows.push_back(CsvRow{alpha, r.o31 * r.o31, r.o32 * r.o32});
    as.push_back(alpha);
    o31s.push_back(r.o31 * r.o31);
    o32s.push_back(r.o32 * r.o32);
  }
  const PanelFiles files = panel_files(outdir, name);
  write_file_atomic(files.csv, render_csv({"alpha", "o31_sq", "o32_sq"}, rows));
  PlotSpec spec;
  spec.title = name + "  (beta = " + format_value(beta) + ")";
  spec.xlabel = "alpha";
  spec.ylabel = "squared overlap";
  spec.ymin = 0.0;
  spec.ymax = 1.0;
  write_svg_plot(files.svg, spec,
                 {{"|<3'|1'>|^2", as, o31s, {}, "#000000", true, false, false},
                  {"|<3'|2'>|^2", as, o32s, {}, "#cc0000", true, false, false}});
}

}  // namespace

int cmd_figures(const FiguresOptions& opt) {
  std::error_code ec;
  fs::create_directories(opt.outdir, ec);
  if (ec || !fs::is_directory(opt.outdir))
    throw InvalidParameter("figures: cannot create output directory " + opt.outdir);

  if (opt.preset == "fig2") {
    figure_time_evolution(opt.outdir, "fig2", kPi / 3, opt);
  } else if (opt.preset == "fig3") {
    figure_time_evolution(opt.outdir, "fig3", kPi / 6, opt);
  } else if (opt.preset == "fig4") {
    figure4(opt.outdir, opt);
  } else if (opt.preset == "fig5") {
    figure5(opt.outdir, opt);
  } else if (opt.preset == "fig7") {
    figure7_panel(opt.outdir, "fig7a", kPi / 3, opt, substream_seed(opt.sim.seed, 0));
    figure7_panel(opt.outdir, "fig7b", kPi / 2, opt, substream_seed(opt.sim.seed, 1));
  } else if (opt.preset == "figs2") {
    figureS2_panel(opt.outdir, "figs2a", kPi / 3, opt);
    figureS2_panel(opt.outdir, "figs2b", kPi / 2, opt);
  } else {
    throw InvalidParameter("figures: unknown preset '" + opt.preset +
                           "' (expected fig2|fig3|fig4|fig5|fig7|figs2)");
  }
  return 0;
}

}  // namespace ptqsd::cli
