// Copyright 2026 The driftlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRIFTLAB_SVG_HPP
#define DRIFTLAB_SVG_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "driftlab/errors.hpp"
#include "driftlab/format.hpp"

namespace driftlab {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool points_only = false;  ///< scatter instead of polyline
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<PlotSeries> series;
};

namespace detail {

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> ticks;
};

/// Tick positions at a 1-2-5 progression covering [lo, hi].
inline Axis nice_axis(double lo, double hi) {
  if (!(hi > lo)) {
    hi = lo + 1.0;
  }
  const double span = hi - lo;
  const double raw_step = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw_step) {
      step = mag * m;
      break;
    }
  }
  Axis axis;
  axis.lo = std::floor(lo / step) * step;
  axis.hi = std::ceil(hi / step) * step;
  for (double v = axis.lo; v <= axis.hi + step * 0.5; v += step) {
    axis.ticks.push_back(v);
  }
  return axis;
}

inline Axis log_axis(double lo, double hi) {
  Axis axis;
  axis.lo = std::floor(std::log10(lo));
  axis.hi = std::ceil(std::log10(hi));
  if (!(axis.hi > axis.lo)) {
    axis.hi = axis.lo + 1.0;
  }
  for (double d = axis.lo; d <= axis.hi + 0.5; d += 1.0) {
    axis.ticks.push_back(d);
  }
  return axis;
}

inline std::string tick_label(double v) {
  const double rounded = std::round(v * 1e9) / 1e9;
  if (rounded == std::floor(rounded) && std::abs(rounded) < 1e7) {
    return format_int(static_cast<std::int64_t>(rounded));
  }
  return format_double(rounded);
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Renders the plot as a standalone SVG. Output contains data geometry and
/// static styling only; no timestamps, so re-rendering is byte-identical.
inline void write_svg_plot(const PlotSpec& spec, const std::filesystem::path& path) {
  constexpr double width = 880.0;
  constexpr double height = 560.0;
  constexpr double mleft = 80.0;
  constexpr double mright = 30.0;
  constexpr double mtop = 50.0;
  constexpr double mbottom = 65.0;
  const double plot_w = width - mleft - mright;
  const double plot_h = height - mtop - mbottom;

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const PlotSeries& s : spec.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (spec.log_x && !(s.x[i] > 0.0)) {
        continue;
      }
      if (first) {
        x_min = x_max = s.x[i];
        y_min = y_max = s.y[i];
        first = false;
      } else {
        x_min = std::min(x_min, s.x[i]);
        x_max = std::max(x_max, s.x[i]);
        y_min = std::min(y_min, s.y[i]);
        y_max = std::max(y_max, s.y[i]);
      }
    }
  }

  const detail::Axis x_axis = spec.log_x ? detail::log_axis(x_min, x_max)
                                         : detail::nice_axis(x_min, x_max);
  const detail::Axis y_axis = detail::nice_axis(y_min, y_max);

  const auto x_pos = [&](double v) {
    const double t = spec.log_x ? std::log10(v) : v;
    return mleft + (t - x_axis.lo) / (x_axis.hi - x_axis.lo) * plot_w;
  };
  const auto y_pos = [&](double v) {
    return mtop + plot_h - (v - y_axis.lo) / (y_axis.hi - y_axis.lo) * plot_h;
  };

  static const char* palette[] = {"#3465a4", "#cc4125", "#6aa84f", "#8e63ce"};

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"17\">"
      << detail::xml_escape(spec.title) << "</text>\n";

  // frame and grid
  out << "<rect x=\"" << mleft << "\" y=\"" << mtop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (double tick : x_axis.ticks) {
    const double px = mleft + (tick - x_axis.lo) / (x_axis.hi - x_axis.lo) * plot_w;
    out << "<line x1=\"" << format_double_fixed(px, 2) << "\" y1=\"" << mtop
        << "\" x2=\"" << format_double_fixed(px, 2) << "\" y2=\"" << mtop + plot_h
        << "\" stroke=\"#ddd\"/>\n";
    const std::string label = spec.log_x
                                  ? "1e" + detail::tick_label(tick)
                                  : detail::tick_label(tick);
    out << "<text x=\"" << format_double_fixed(px, 2) << "\" y=\"" << mtop + plot_h + 22
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << label << "</text>\n";
  }
  for (double tick : y_axis.ticks) {
    const double py = y_pos(tick);
    out << "<line x1=\"" << mleft << "\" y1=\"" << format_double_fixed(py, 2)
        << "\" x2=\"" << mleft + plot_w << "\" y2=\"" << format_double_fixed(py, 2)
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << mleft - 8 << "\" y=\"" << format_double_fixed(py + 4, 2)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << detail::tick_label(tick) << "</text>\n";
  }
  out << "<text x=\"" << mleft + plot_w / 2 << "\" y=\"" << height - 18
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << detail::xml_escape(spec.x_label) << "</text>\n";
  out << "<text x=\"22\" y=\"" << mtop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 22 "
      << mtop + plot_h / 2 << ")\">" << detail::xml_escape(spec.y_label) << "</text>\n";

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const PlotSeries& series = spec.series[s];
    const char* color = palette[s % 4];
    if (series.points_only) {
      for (std::size_t i = 0; i < series.x.size(); ++i) {
        if (spec.log_x && !(series.x[i] > 0.0)) {
          continue;
        }
        out << "<circle cx=\"" << format_double_fixed(x_pos(series.x[i]), 2)
            << "\" cy=\"" << format_double_fixed(y_pos(series.y[i]), 2)
            << "\" r=\"2.2\" fill=\"" << color << "\" fill-opacity=\"0.55\"/>\n";
      }
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.1\" points=\"";
      for (std::size_t i = 0; i < series.x.size(); ++i) {
        if (spec.log_x && !(series.x[i] > 0.0)) {
          continue;
        }
        out << format_double_fixed(x_pos(series.x[i]), 2) << ','
            << format_double_fixed(y_pos(series.y[i]), 2) << ' ';
      }
      out << "\"/>\n";
    }
    if (!series.label.empty()) {
      const double ly = mtop + 18.0 + 18.0 * static_cast<double>(s);
      out << "<rect x=\"" << mleft + 12 << "\" y=\"" << ly - 9
          << "\" width=\"14\" height=\"4\" fill=\"" << color << "\"/>\n";
      out << "<text x=\"" << mleft + 32 << "\" y=\"" << ly
          << "\" font-family=\"sans-serif\" font-size=\"12\">"
          << detail::xml_escape(series.label) << "</text>\n";
    }
  }
  out << "</svg>\n";
  if (!out.good()) {
    throw IoError("write failed: " + path.string());
  }
}

}  // namespace driftlab

#endif  // DRIFTLAB_SVG_HPP
