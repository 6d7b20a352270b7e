// SPDX-License-Identifier: Apache-2.0
//
// Self-contained SVG line/scatter plots for the figure presets. No external
// renderer: the CLI writes vector images directly.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ptqsd::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> yerr;  // empty or same length as y
  std::string color = "#000000";
  bool line = true;
  bool points = false;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::optional<double> ymin;
  std::optional<double> ymax;
  int width = 640;
  int height = 420;
};

std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);

void write_svg_plot(const std::string& path, const PlotSpec& spec,
                    const std::vector<Series>& series);

}  // namespace ptqsd::cli
