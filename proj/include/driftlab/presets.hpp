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

#ifndef DRIFTLAB_PRESETS_HPP
#define DRIFTLAB_PRESETS_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "driftlab/csv.hpp"
#include "driftlab/svg.hpp"
#include "driftlab/trace.hpp"

namespace driftlab {

enum class FigureId { F1, F2, F3, F4, F5, F6, F7, E2_1, E2_2, E2_3, E2_4 };

enum class PlotKind { Series, ErrorCurve, Scatter };

/// One canned experiment: the scenario behind a figure plus how to plot it.
/// The E2 presets reuse the synthetic mechanics under a calibration-drift
/// reading (y = photometric measurement, b = zeropoint drift).
struct FigurePreset {
  FigureId id;
  std::string name;   ///< file stem, e.g. "F3" or "E2-1"
  std::string title;
  PlotKind plot;
  ScenarioConfig config;
};

inline constexpr std::uint64_t kPresetSeed = 42;

namespace detail {

inline ScenarioConfig preset_config(DriftSpec drift,
                                    std::optional<std::int64_t> window = std::nullopt) {
  ScenarioConfig config;
  config.theta_star = 0.0;
  config.sigma = 1.0;
  config.n = 5000;
  config.prior_mean = 0.0;
  config.prior_var = 100.0;
  config.drift = drift;
  config.seed = kPresetSeed;
  config.window = window;
  return config;
}

}  // namespace detail

inline const std::vector<FigurePreset>& figure_presets() {
  static const std::vector<FigurePreset> presets = [] {
    const DriftSpec linear = DriftSpec::linear(0.002);
    const DriftSpec rw = DriftSpec::random_walk(0.01);
    std::vector<FigurePreset> out;
    out.push_back({FigureId::F1, "F1", "Observed stream with hidden linear bias",
                   PlotKind::Series, detail::preset_config(linear)});
    out.push_back({FigureId::F2, "F2", "Posterior mean trajectory under hidden bias",
                   PlotKind::Series, detail::preset_config(linear)});
    out.push_back({FigureId::F3, "F3", "Absolute error vs observations (linear bias)",
                   PlotKind::ErrorCurve, detail::preset_config(linear)});
    out.push_back({FigureId::F4, "F4", "Absolute error vs observations (no drift)",
                   PlotKind::ErrorCurve, detail::preset_config(DriftSpec::none())});
    out.push_back({FigureId::F5,
                   "F5",
                   "Absolute error vs observations (random-walk bias)",
                   PlotKind::ErrorCurve,
                   detail::preset_config(rw)});
    out.push_back({FigureId::F6, "F6",
                   "Sliding-window estimate under linear bias (W=200)",
                   PlotKind::ErrorCurve, detail::preset_config(linear, 200)});
    out.push_back({FigureId::F7, "F7",
                   "Posterior variance vs rolling predictive error",
                   PlotKind::Scatter, detail::preset_config(linear)});
    out.push_back({FigureId::E2_1, "E2-1",
                   "Photometric stream with hidden zeropoint drift", PlotKind::Series,
                   detail::preset_config(linear)});
    out.push_back({FigureId::E2_2, "E2-2",
                   "Posterior brightness estimate under zeropoint drift",
                   PlotKind::Series, detail::preset_config(linear)});
    out.push_back({FigureId::E2_3, "E2-3",
                   "Absolute error vs observations (zeropoint drift)",
                   PlotKind::ErrorCurve, detail::preset_config(linear)});
    out.push_back({FigureId::E2_4, "E2-4",
                   "Calibration confidence vs predictive error", PlotKind::Scatter,
                   detail::preset_config(linear)});
    return out;
  }();
  return presets;
}

inline const FigurePreset& find_preset(FigureId id) {
  for (const FigurePreset& preset : figure_presets()) {
    if (preset.id == id) {
      return preset;
    }
  }
  throw ConfigError("unknown figure id");
}

inline std::optional<FigureId> parse_figure_id(std::string name) {
  for (char& c : name) {
    if (c == '_') {
      c = '-';
    }
  }
  for (const FigurePreset& preset : figure_presets()) {
    if (preset.name == name) {
      return preset.id;
    }
  }
  return std::nullopt;
}

/// Rolling window used for the decoupling scatter; matches the default audit
/// policy's pred_window.
inline constexpr std::int64_t kScatterRollingWindow = 50;

struct FigureData {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  bool log_x = false;
};

namespace detail {

inline FigureData figure_data(const FigurePreset& preset, const RunTrace& trace) {
  FigureData data;
  switch (preset.id) {
    case FigureId::F1:
    case FigureId::E2_1: {
      data.columns = {"t", "y", "b_true"};
      for (const TraceRow& row : trace.rows) {
        data.rows.push_back({static_cast<double>(row.t), row.y, row.b_true});
      }
      break;
    }
    case FigureId::F2:
    case FigureId::E2_2: {
      data.columns = {"t", "post_mean", "post_var"};
      for (const TraceRow& row : trace.rows) {
        data.rows.push_back({static_cast<double>(row.t), row.post_mean, row.post_var});
      }
      break;
    }
    case FigureId::F3:
    case FigureId::F4:
    case FigureId::F5:
    case FigureId::E2_3: {
      data.columns = {"t", "abs_error"};
      data.log_x = true;
      for (const TraceRow& row : trace.rows) {
        data.rows.push_back({static_cast<double>(row.t), row.abs_error});
      }
      break;
    }
    case FigureId::F6: {
      data.columns = {"t", "window_est", "window_abs_error"};
      data.log_x = true;
      for (const TraceRow& row : trace.rows) {
        const double est = row.window_est.value_or(0.0);
        data.rows.push_back({static_cast<double>(row.t), est,
                             std::abs(est - trace.config.theta_star)});
      }
      break;
    }
    case FigureId::F7:
    case FigureId::E2_4: {
      data.columns = {"post_var", "pred_err_rolling"};
      data.log_x = true;
      std::vector<double> pred;
      pred.reserve(trace.rows.size());
      for (const TraceRow& row : trace.rows) {
        pred.push_back(row.pred_err.value_or(0.0));
      }
      const std::vector<double> rolling = rolling_mean(pred, kScatterRollingWindow);
      // only rows whose rolling window holds full predictive history
      for (std::size_t i = static_cast<std::size_t>(kScatterRollingWindow);
           i < trace.rows.size(); ++i) {
        data.rows.push_back({trace.rows[i].post_var, rolling[i]});
      }
      break;
    }
  }
  return data;
}

inline void write_figure_csv(const FigurePreset& preset, const RunTrace& trace,
                             const FigureData& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out << "# figure: " << preset.name << '\n';
  out << "# title: " << preset.title << '\n';
  out << "# tool_version: " << kVersion << '\n';
  out << "# seed: " << trace.config.seed << '\n';
  out << "# config_hash: " << trace.metadata.config_hash << '\n';
  out << "# x_scale: " << (data.log_x ? "log" : "linear") << '\n';
  for (std::size_t c = 0; c < data.columns.size(); ++c) {
    out << (c == 0 ? "" : ",") << data.columns[c];
  }
  out << '\n';
  for (const std::vector<double>& row : data.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) {
        out << ',';
      }
      if (data.columns[c] == "t") {
        out << format_int(static_cast<std::int64_t>(row[c]));
      } else {
        out << format_double(row[c]);
      }
    }
    out << '\n';
  }
  if (!out.good()) {
    throw IoError("write failed: " + path.string());
  }
}

inline void write_figure_svg(const FigurePreset& preset, const FigureData& data,
                             const std::filesystem::path& path) {
  PlotSpec spec;
  spec.title = preset.title;
  spec.log_x = data.log_x;
  const auto column = [&](std::size_t c) {
    std::vector<double> values;
    values.reserve(data.rows.size());
    for (const std::vector<double>& row : data.rows) {
      values.push_back(row[c]);
    }
    return values;
  };
  switch (preset.plot) {
    case PlotKind::Series: {
      spec.x_label = data.columns[0];
      spec.y_label = data.columns[1];
      spec.series.push_back({data.columns[1], column(0), column(1), false});
      if (data.columns.size() > 2 && data.columns[2] == "b_true") {
        spec.series.push_back({data.columns[2], column(0), column(2), false});
      }
      break;
    }
    case PlotKind::ErrorCurve: {
      const std::size_t yc = data.columns.size() - 1;
      spec.x_label = data.columns[0];
      spec.y_label = data.columns[yc];
      spec.series.push_back({data.columns[yc], column(0), column(yc), false});
      break;
    }
    case PlotKind::Scatter: {
      spec.x_label = data.columns[0];
      spec.y_label = data.columns[1];
      spec.series.push_back({"", column(0), column(1), true});
      break;
    }
  }
  write_svg_plot(spec, path);
}

}  // namespace detail

struct EmittedFigure {
  std::filesystem::path csv;
  std::filesystem::path svg;
};

/// Reproduces a preset: writes <name>.csv (canonical data) and <name>.svg
/// into out_dir. Output carries no timestamps, so repeated emission is
/// byte-identical.
inline EmittedFigure reproduce_figure(FigureId id, const std::filesystem::path& out_dir) {
  const FigurePreset& preset = find_preset(id);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (!std::filesystem::is_directory(out_dir)) {
    throw IoError("output directory is not writable: " + out_dir.string());
  }
  RunTrace trace = run_scenario(preset.config);
  trace.metadata.created.clear();  // deterministic artifact

  const FigureData data = detail::figure_data(preset, trace);
  EmittedFigure emitted;
  emitted.csv = out_dir / (preset.name + ".csv");
  emitted.svg = out_dir / (preset.name + ".svg");
  detail::write_figure_csv(preset, trace, data, emitted.csv);
  detail::write_figure_svg(preset, data, emitted.svg);
  return emitted;
}

}  // namespace driftlab

#endif  // DRIFTLAB_PRESETS_HPP
