// SPDX-License-Identifier: Apache-2.0
#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "csv.hpp"

namespace ptqsd::cli {

namespace {

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range axis_range(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = std::max(std::abs(lo), 1.0) * 0.1;
    return {lo - pad, hi + pad};
  }
  const double pad = (hi - lo) * 0.06;
  return {lo - pad, hi + pad};
}

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series) {
  const int kMarginLeft = 64, kMarginRight = 20, kMarginTop = 36, kMarginBottom = 48;
  const double plot_w = spec.width - kMarginLeft - kMarginRight;
  const double plot_h = spec.height - kMarginTop - kMarginBottom;

  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      const double err = (i < s.yerr.size()) ? s.yerr[i] : 0.0;
      ylo = std::min(ylo, s.y[i] - err);
      yhi = std::max(yhi, s.y[i] + err);
    }
  }
  if (!std::isfinite(xlo)) { xlo = 0; xhi = 1; ylo = 0; yhi = 1; }
  const Range xr = axis_range(xlo, xhi);
  Range yr = axis_range(ylo, yhi);
  if (spec.ymin) yr.lo = *spec.ymin;
  if (spec.ymax) yr.hi = *spec.ymax;

  const auto px = [&](double x) { return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  const auto py = [&](double y) {
    return kMarginTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * plot_h;
  };

  std::string svg;
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\" font-size=\"12\">\n",
                spec.width, spec.height, spec.width, spec.height);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes + ticks
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%d\" y=\"%d\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                "stroke=\"#444\"/>\n",
                kMarginLeft, kMarginTop, plot_w, plot_h);
  svg += buf;

  const double xstep = nice_step(xr.hi - xr.lo);
  for (double x = std::ceil(xr.lo / xstep) * xstep; x <= xr.hi + 1e-9; x += xstep) {
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#444\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n",
                  px(x), kMarginTop + plot_h, px(x), kMarginTop + plot_h + 5.0, px(x),
                  kMarginTop + plot_h + 20.0, fmt(x).c_str());
    svg += buf;
  }
  const double ystep = nice_step(yr.hi - yr.lo);
  for (double y = std::ceil(yr.lo / ystep) * ystep; y <= yr.hi + 1e-9; y += ystep) {
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#444\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%s</text>\n",
                  kMarginLeft - 5.0, py(y), static_cast<double>(kMarginLeft), py(y),
                  kMarginLeft - 8.0, py(y) + 4.0, fmt(y).c_str());
    svg += buf;
  }

  // series
  for (const Series& s : series) {
    if (s.line && s.x.size() > 1) {
      std::string pts;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
        pts += buf;
      }
      std::snprintf(buf, sizeof(buf),
                    "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\"%s/>\n",
                    pts.c_str(), s.color.c_str(),
                    s.dashed ? " stroke-dasharray=\"6 4\"" : "");
      svg += buf;
    }
    if (s.points) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        if (i < s.yerr.size() && s.yerr[i] > 0.0) {
          std::snprintf(buf, sizeof(buf),
                        "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\"/>\n",
                        px(s.x[i]), py(s.y[i] - s.yerr[i]), px(s.x[i]), py(s.y[i] + s.yerr[i]),
                        s.color.c_str());
          svg += buf;
        }
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", px(s.x[i]),
                      py(s.y[i]), s.color.c_str());
        svg += buf;
      }
    }
  }

  // title, labels, legend
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">%s</text>\n",
                kMarginLeft + plot_w / 2, spec.title.c_str());
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%d\" text-anchor=\"middle\">%s</text>\n",
                kMarginLeft + plot_w / 2, spec.height - 8, spec.xlabel.c_str());
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"16\" y=\"%.1f\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
                "%.1f)\">%s</text>\n",
                kMarginTop + plot_h / 2, kMarginTop + plot_h / 2, spec.ylabel.c_str());
  svg += buf;

  double legend_y = kMarginTop + 14.0;
  for (const Series& s : series) {
    if (s.label.empty()) continue;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                  "stroke-width=\"2\"%s/><text x=\"%.1f\" y=\"%.1f\">%s</text>\n",
                  kMarginLeft + plot_w - 150.0, legend_y, kMarginLeft + plot_w - 126.0, legend_y,
                  s.color.c_str(), s.dashed ? " stroke-dasharray=\"6 4\"" : "",
                  kMarginLeft + plot_w - 120.0, legend_y + 4.0, s.label.c_str());
    svg += buf;
    legend_y += 16.0;
  }

  svg += "</svg>\n";
  return svg;
}

void write_svg_plot(const std::string& path, const PlotSpec& spec,
                    const std::vector<Series>& series) {
  write_file_atomic(path, render_svg(spec, series));
}

}  // namespace ptqsd::cli
