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

#ifndef DRIFTLAB_TRACE_HPP
#define DRIFTLAB_TRACE_HPP

#include <chrono>
#include <cstdint>
#include <ctime>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "driftlab/diagnostics.hpp"
#include "driftlab/drift.hpp"
#include "driftlab/estimators.hpp"
#include "driftlab/format.hpp"
#include "driftlab/version.hpp"

namespace driftlab {

/// Per-step diagnostics record; the canonical unit consumed by diagnostics,
/// audit, and plotting.
struct TraceRow {
  std::int64_t t = 0;
  double y = 0.0;
  double b_true = 0.0;
  double post_mean = 0.0;
  double post_var = 0.0;
  double abs_error = 0.0;
  std::optional<double> pred_err;    ///< absent at t = 1
  std::optional<double> window_est;  ///< absent unless the scenario has a window
};

struct TraceMetadata {
  std::string tool_version;
  std::string created;  ///< RFC 3339 UTC; omitted from deterministic figure output
  std::uint64_t seed = 0;
  std::string config_hash;
  bool seed_overridden = false;
};

struct RunTrace {
  ScenarioConfig config;
  std::vector<TraceRow> rows;
  TraceMetadata metadata;
};

/// Canonical key=value rendering of a config; the basis of config_hash.
/// Field order is fixed and floats use shortest round-trip formatting, so
/// equal configs always hash equally.
inline std::string canonical_config_string(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "drift.kind=" << to_string(config.drift.kind) << '\n';
  if (config.drift.kind == DriftKind::Linear) {
    out << "drift.alpha=" << format_double(config.drift.alpha) << '\n';
  }
  if (config.drift.kind == DriftKind::RandomWalk) {
    out << "drift.sigma_rw=" << format_double(config.drift.sigma_rw) << '\n';
  }
  out << "n=" << format_int(config.n) << '\n'
      << "prior_mean=" << format_double(config.prior_mean) << '\n'
      << "prior_var=" << format_double(config.prior_var) << '\n'
      << "seed=" << config.seed << '\n'
      << "sigma=" << format_double(config.sigma) << '\n'
      << "theta_star=" << format_double(config.theta_star) << '\n';
  if (config.window) {
    out << "window=" << format_int(*config.window) << '\n';
  }
  return out.str();
}

/// FNV-1a 64-bit, rendered as 16 hex digits.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

inline std::string config_hash(const ScenarioConfig& config) {
  return fnv1a_hex(canonical_config_string(config));
}

inline std::string rfc3339_utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Runs the stream through the stationarity-assuming estimators and records
/// every diagnostic column. Predictive error is evaluated before each
/// observation is absorbed. Deterministic given the config.
inline RunTrace run_scenario(const ScenarioConfig& config) {
  const std::vector<ObservationRecord> stream = generate_stream(config);

  GaussianPosterior posterior(config.prior_mean, config.prior_var);
  std::optional<SlidingWindow> window;
  if (config.window) {
    window.emplace(*config.window);
  }

  RunTrace trace;
  trace.config = config;
  trace.rows.reserve(stream.size());
  for (const ObservationRecord& obs : stream) {
    TraceRow row;
    row.t = obs.t;
    row.y = obs.y;
    row.b_true = obs.b_true;
    if (posterior.count() >= 1) {
      row.pred_err = one_step_predictive_error(posterior, obs.y);
    }
    posterior = conjugate_update(posterior, obs.y, config.sigma);
    row.post_mean = posterior.mean();
    row.post_var = posterior.variance();
    row.abs_error = absolute_error(posterior.mean(), config.theta_star);
    if (window) {
      window->push(obs.y);
      row.window_est = window->mean();
    }
    trace.rows.push_back(row);
  }

  trace.metadata.tool_version = kVersion;
  trace.metadata.created = rfc3339_utc_now();
  trace.metadata.seed = config.seed;
  trace.metadata.config_hash = config_hash(config);
  return trace;
}

/// Checkpoint grid for error-vs-data curves: {50, 100, 200, 500, 1000, 2000,
/// 5000} clipped to n, with n itself always included.
inline std::vector<std::int64_t> error_curve_checkpoints(std::int64_t n) {
  static constexpr std::int64_t grid[] = {50, 100, 200, 500, 1000, 2000, 5000};
  std::vector<std::int64_t> checkpoints;
  for (std::int64_t c : grid) {
    if (c <= n) {
      checkpoints.push_back(c);
    }
  }
  if (checkpoints.empty() || checkpoints.back() != n) {
    checkpoints.push_back(n);
  }
  return checkpoints;
}

struct SummaryStat {
  double mean = 0.0;
  double sd = 0.0;  ///< sample sd across seeds; 0 when only one seed ran
};

struct CheckpointSummary {
  std::int64_t t = 0;
  SummaryStat abs_error;
  SummaryStat post_var;
  SummaryStat pred_err;  ///< zeros at t = 1, where no prediction exists
  std::optional<SummaryStat> window_est;
};

struct ReplicateSummary {
  ScenarioConfig base_config;
  std::int64_t n_seeds = 0;
  std::vector<CheckpointSummary> checkpoints;
};

namespace detail {

inline SummaryStat summarize(const std::vector<double>& values) {
  const auto k = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  const double mean = sum / k;
  if (values.size() < 2) {
    return {mean, 0.0};
  }
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  return {mean, std::sqrt(ss / (k - 1.0))};
}

}  // namespace detail

/// Runs seeds config.seed, config.seed + 1, ... and aggregates abs_error,
/// post_var, pred_err (and window_est when present) at the checkpoint grid.
/// Runs are independent; ordering is by seed.
inline ReplicateSummary replicate(const ScenarioConfig& config, std::int64_t n_seeds) {
  if (n_seeds < 1) {
    throw ConfigError("replicate: n_seeds must be >= 1");
  }
  validate(config);
  const std::vector<std::int64_t> checkpoints = error_curve_checkpoints(config.n);

  struct Columns {
    std::vector<double> abs_error, post_var, pred_err, window_est;
  };
  std::vector<Columns> per_checkpoint(checkpoints.size());

  for (std::int64_t i = 0; i < n_seeds; ++i) {
    ScenarioConfig run_config = config;
    run_config.seed = config.seed + static_cast<std::uint64_t>(i);
    const RunTrace trace = run_scenario(run_config);
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      const TraceRow& row = trace.rows[static_cast<std::size_t>(checkpoints[c] - 1)];
      per_checkpoint[c].abs_error.push_back(row.abs_error);
      per_checkpoint[c].post_var.push_back(row.post_var);
      per_checkpoint[c].pred_err.push_back(row.pred_err.value_or(0.0));
      if (row.window_est) {
        per_checkpoint[c].window_est.push_back(*row.window_est);
      }
    }
  }

  ReplicateSummary summary;
  summary.base_config = config;
  summary.n_seeds = n_seeds;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    CheckpointSummary cs;
    cs.t = checkpoints[c];
    cs.abs_error = detail::summarize(per_checkpoint[c].abs_error);
    cs.post_var = detail::summarize(per_checkpoint[c].post_var);
    cs.pred_err = detail::summarize(per_checkpoint[c].pred_err);
    if (!per_checkpoint[c].window_est.empty()) {
      cs.window_est = detail::summarize(per_checkpoint[c].window_est);
    }
    summary.checkpoints.push_back(cs);
  }
  return summary;
}

}  // namespace driftlab

#endif  // DRIFTLAB_TRACE_HPP
