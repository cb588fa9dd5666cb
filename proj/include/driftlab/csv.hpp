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

#ifndef DRIFTLAB_CSV_HPP
#define DRIFTLAB_CSV_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "driftlab/format.hpp"
#include "driftlab/trace.hpp"

namespace driftlab {

inline constexpr const char* kTraceHeader =
    "t,y,b_true,post_mean,post_var,abs_error,pred_err,window_est";

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      cells.emplace_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return cells;
}

inline std::optional<double> parse_double(std::string_view cell) {
  const std::string_view trimmed = trim(cell);
  if (trimmed.empty()) {
    return std::nullopt;
  }
  double value = 0.0;
  const char* first = trimmed.data();
  const char* last = trimmed.data() + trimmed.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    return std::nullopt;
  }
  return value;
}

}  // namespace detail

/// Writes the trace CSV: a '#'-prefixed metadata block, the mandatory header,
/// then one row per step. '.' decimal separator, LF line endings, empty cells
/// for absent values.
inline void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  out << "# tool_version: " << trace.metadata.tool_version << '\n';
  if (!trace.metadata.created.empty()) {
    out << "# created: " << trace.metadata.created << '\n';
  }
  out << "# seed: " << trace.metadata.seed << '\n';
  if (trace.metadata.seed_overridden) {
    out << "# seed_overridden: true\n";
  }
  out << "# config_hash: " << trace.metadata.config_hash << '\n';
  out << kTraceHeader << '\n';
  for (const TraceRow& row : trace.rows) {
    out << format_int(row.t) << ',' << format_double(row.y) << ','
        << format_double(row.b_true) << ',' << format_double(row.post_mean) << ','
        << format_double(row.post_var) << ',' << format_double(row.abs_error) << ',';
    if (row.pred_err) {
      out << format_double(*row.pred_err);
    }
    out << ',';
    if (row.window_est) {
      out << format_double(*row.window_est);
    }
    out << '\n';
  }
}

inline void write_trace_csv(const RunTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  write_trace_csv(trace, out);
  if (!out.good()) {
    throw IoError("write failed: " + path.string());
  }
}

/// A trace loaded from disk: raw metadata plus rows. The embedded config, if
/// any, is kept as an unparsed string under metadata["config"].
struct TraceFile {
  std::map<std::string, std::string> metadata;
  std::vector<TraceRow> rows;
};

inline TraceFile read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open for reading: " + path.string());
  }
  TraceFile file;
  std::string line;
  bool saw_header = false;
  std::vector<std::string> header;
  std::int64_t data_row = 0;
  while (std::getline(in, line)) {
    const std::string_view view = detail::trim(line);
    if (view.empty()) {
      continue;
    }
    if (view.front() == '#') {
      std::string_view body = view.substr(1);
      const std::size_t colon = body.find(':');
      if (colon != std::string_view::npos) {
        const std::string key(detail::trim(body.substr(0, colon)));
        const std::string value(detail::trim(body.substr(colon + 1)));
        file.metadata[key] = value;
      }
      continue;
    }
    if (!saw_header) {
      header = detail::split_csv_line(view);
      if (header.empty() || header.front() != "t") {
        throw DataError("trace csv: first column must be 't': " + path.string());
      }
      saw_header = true;
      continue;
    }
    ++data_row;
    const std::vector<std::string> cells = detail::split_csv_line(view);
    if (cells.size() != header.size()) {
      throw DataError("trace csv: row " + format_int(data_row) +
                      " has wrong cell count");
    }
    TraceRow row;
    bool have_t = false;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& name = header[c];
      const std::optional<double> value = detail::parse_double(cells[c]);
      const bool required = name == "t" || name == "y" || name == "b_true" ||
                            name == "post_mean" || name == "post_var" ||
                            name == "abs_error";
      if (!value) {
        if (required && !cells[c].empty()) {
          throw DataError("trace csv: row " + format_int(data_row) + ": bad value '" +
                          cells[c] + "' in column " + name);
        }
        if (required && cells[c].empty()) {
          throw DataError("trace csv: row " + format_int(data_row) +
                          ": missing value in column " + name);
        }
        continue;
      }
      if (name == "t") {
        row.t = static_cast<std::int64_t>(*value);
        have_t = true;
      } else if (name == "y") {
        row.y = *value;
      } else if (name == "b_true") {
        row.b_true = *value;
      } else if (name == "post_mean") {
        row.post_mean = *value;
      } else if (name == "post_var") {
        row.post_var = *value;
      } else if (name == "abs_error") {
        row.abs_error = *value;
      } else if (name == "pred_err") {
        row.pred_err = *value;
      } else if (name == "window_est") {
        row.window_est = *value;
      }
    }
    if (!have_t) {
      throw DataError("trace csv: row " + format_int(data_row) + ": missing t");
    }
    file.rows.push_back(row);
  }
  if (!saw_header) {
    throw DataError("trace csv: no header row: " + path.string());
  }
  return file;
}

/// Replicate summary as CSV. Window columns appear only when the scenario ran
/// a window estimator.
inline void write_replicate_csv(const ReplicateSummary& summary, std::ostream& out) {
  const bool has_window =
      !summary.checkpoints.empty() && summary.checkpoints.front().window_est.has_value();
  out << "t,abs_error_mean,abs_error_sd,post_var_mean,post_var_sd,pred_err_mean,"
         "pred_err_sd";
  if (has_window) {
    out << ",window_est_mean,window_est_sd";
  }
  out << '\n';
  for (const CheckpointSummary& cs : summary.checkpoints) {
    out << format_int(cs.t) << ',' << format_double(cs.abs_error.mean) << ','
        << format_double(cs.abs_error.sd) << ',' << format_double(cs.post_var.mean)
        << ',' << format_double(cs.post_var.sd) << ',' << format_double(cs.pred_err.mean)
        << ',' << format_double(cs.pred_err.sd);
    if (has_window) {
      if (cs.window_est) {
        out << ',' << format_double(cs.window_est->mean) << ','
            << format_double(cs.window_est->sd);
      } else {
        out << ",,";
      }
    }
    out << '\n';
  }
}

struct TimedValue {
  double t = 0.0;
  double value = 0.0;
};

/// Reads (t, value) pairs from a generic CSV with a header row. Rows are
/// ordered by the time column when one is named, else kept in file order with
/// t = 1, 2, ... Unparseable or non-finite cells are a hard error that names
/// the offending data rows; nothing is skipped silently. Row numbers count
/// data rows, starting at 1 just below the header.
inline std::vector<TimedValue> ingest_csv(const std::filesystem::path& path,
                                          const std::string& value_column,
                                          const std::optional<std::string>& time_column =
                                              std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open for reading: " + path.string());
  }
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    const std::string_view view = detail::trim(line);
    if (view.empty() || view.front() == '#') {
      continue;
    }
    header = detail::split_csv_line(view);
    break;
  }
  if (header.empty()) {
    throw DataError("ingest: empty file: " + path.string());
  }
  const auto find_column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw DataError("ingest: column '" + name + "' not found in " + path.string());
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t value_idx = find_column(value_column);
  std::optional<std::size_t> time_idx;
  if (time_column) {
    time_idx = find_column(*time_column);
  }

  std::vector<TimedValue> out;
  std::vector<std::string> bad_rows;
  std::int64_t data_row = 0;
  while (std::getline(in, line)) {
    const std::string_view view = detail::trim(line);
    if (view.empty() || view.front() == '#') {
      continue;
    }
    ++data_row;
    const std::vector<std::string> cells = detail::split_csv_line(view);
    if (cells.size() != header.size()) {
      bad_rows.push_back("row " + format_int(data_row) + ": wrong cell count");
      continue;
    }
    const std::optional<double> value = detail::parse_double(cells[value_idx]);
    if (!value || !std::isfinite(*value)) {
      bad_rows.push_back("row " + format_int(data_row) + ": value '" +
                         cells[value_idx] + "' is not a finite number");
      continue;
    }
    double t = static_cast<double>(data_row);
    if (time_idx) {
      const std::optional<double> tv = detail::parse_double(cells[*time_idx]);
      if (!tv || !std::isfinite(*tv)) {
        bad_rows.push_back("row " + format_int(data_row) + ": time '" +
                           cells[*time_idx] + "' is not a finite number");
        continue;
      }
      t = *tv;
    }
    out.push_back({t, *value});
  }
  if (!bad_rows.empty()) {
    std::ostringstream msg;
    msg << "ingest: " << bad_rows.size() << " bad row(s) in " << path.string();
    for (const std::string& r : bad_rows) {
      msg << "; " << r;
    }
    throw DataError(msg.str());
  }
  if (out.empty()) {
    throw DataError("ingest: no data rows in " + path.string());
  }
  if (time_idx) {
    std::stable_sort(out.begin(), out.end(),
                     [](const TimedValue& a, const TimedValue& b) { return a.t < b.t; });
  }
  return out;
}

}  // namespace driftlab

#endif  // DRIFTLAB_CSV_HPP
