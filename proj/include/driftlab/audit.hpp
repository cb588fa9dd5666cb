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

#ifndef DRIFTLAB_AUDIT_HPP
#define DRIFTLAB_AUDIT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "driftlab/diagnostics.hpp"
#include "driftlab/trace.hpp"

namespace driftlab {

/// Thresholds of the audit layer. Defaults separate the linear-drift and
/// no-drift scenarios at n = 5000; calibrate_policy validates the operating
/// point.
struct AuditPolicy {
  std::int64_t pred_window = 50;      ///< rolling window for predictive-error smoothing
  std::int64_t decouple_horizon = 10; ///< checkpoints compared over the trace's latter half
  std::int64_t trend_blocks = 20;     ///< blocks for the observable-trend check
  double trend_alpha = 0.01;          ///< significance threshold for both checks
  std::int64_t min_n = 200;           ///< minimum trace length to audit
};

inline void validate(const AuditPolicy& policy) {
  if (policy.pred_window < 2) {
    throw ConfigError("policy: pred_window must be >= 2");
  }
  if (policy.decouple_horizon < 3) {
    throw ConfigError("policy: decouple_horizon must be >= 3");
  }
  if (policy.trend_blocks < 3) {
    throw ConfigError("policy: trend_blocks must be >= 3");
  }
  if (!(policy.trend_alpha > 0.0) || !(policy.trend_alpha < 1.0)) {
    throw ConfigError("policy: trend_alpha must be in (0, 1)");
  }
  if (policy.min_n < 1) {
    throw ConfigError("policy: min_n must be >= 1");
  }
}

struct Finding {
  std::string check;
  double statistic = 0.0;  ///< the quantity the threshold applies to
  double threshold = 0.0;
  bool triggered = false;
};

enum class AuditStatus { Proceed, RedFlag, Suspend };

inline const char* to_string(AuditStatus status) noexcept {
  switch (status) {
    case AuditStatus::Proceed:
      return "proceed";
    case AuditStatus::RedFlag:
      return "red_flag";
    case AuditStatus::Suspend:
      return "suspend";
  }
  return "proceed";
}

struct AuditVerdict {
  AuditStatus status = AuditStatus::Proceed;
  bool decoupling_flag = false;
  std::optional<TrendResult> trend;  ///< blocked trend on the raw observations
  std::vector<Finding> evidence;
};

struct DecouplingResult {
  bool flag = false;
  std::vector<Finding> evidence;  ///< posterior contraction + predictive-error trend
};

namespace detail {

/// Equally spaced 1-based checkpoints covering [ceil(n/2), n].
inline std::vector<std::int64_t> decoupling_checkpoints(std::int64_t n,
                                                        std::int64_t horizon) {
  const std::int64_t start = (n + 1) / 2;
  if (n - start < horizon - 1) {
    throw InsufficientDataError("audit: trace too short for the checkpoint horizon");
  }
  std::vector<std::int64_t> checkpoints;
  checkpoints.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t k = 0; k < horizon; ++k) {
    checkpoints.push_back(start + k * (n - start) / (horizon - 1));
  }
  return checkpoints;
}

/// Trailing mean of the defined predictive errors within (t - w, t].
inline double rolling_pred_err_at(std::span<const TraceRow> rows, std::int64_t t,
                                  std::int64_t w) {
  const std::int64_t lo = std::max<std::int64_t>(1, t - w + 1);
  double sum = 0.0;
  std::int64_t count = 0;
  for (std::int64_t s = lo; s <= t; ++s) {
    const TraceRow& row = rows[static_cast<std::size_t>(s - 1)];
    if (row.pred_err) {
      sum += *row.pred_err;
      ++count;
    }
  }
  if (count == 0) {
    throw InsufficientDataError("audit: no predictive errors in the rolling window");
  }
  return sum / static_cast<double>(count);
}

}  // namespace detail

/// Detects the confidence / predictive-validity decoupling signature: the
/// posterior variance keeps contracting across the checkpoints while the
/// rolling predictive error shows a significant rising trend (tau >= 0 with
/// one-sided p below trend_alpha). The audit reads only arrival order, y,
/// post_var and pred_err; never b_true or theta_star.
inline DecouplingResult decoupling_detect(std::span<const TraceRow> rows,
                                          const AuditPolicy& policy) {
  validate(policy);
  const std::int64_t n = std::ssize(rows);
  if (n < policy.min_n) {
    throw InsufficientDataError("decoupling_detect: trace shorter than policy.min_n");
  }
  const std::vector<std::int64_t> checkpoints =
      detail::decoupling_checkpoints(n, policy.decouple_horizon);

  bool contracting = true;
  std::int64_t decreasing_steps = 0;
  std::vector<double> rolling;
  rolling.reserve(checkpoints.size());
  double prev_var = 0.0;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const TraceRow& row = rows[static_cast<std::size_t>(checkpoints[i] - 1)];
    if (i > 0) {
      if (row.post_var < prev_var) {
        ++decreasing_steps;
      } else {
        contracting = false;
      }
    }
    prev_var = row.post_var;
    rolling.push_back(detail::rolling_pred_err_at(rows, checkpoints[i], policy.pred_window));
  }

  double tau = 0.0;
  double p_rising = 1.0;
  try {
    const TrendResult trend = kendall_tau_test(rolling, TrendAlternative::Increasing);
    tau = trend.tau;
    p_rising = trend.p_value;
  } catch (const DegenerateResultError&) {
    // A perfectly constant rolling series carries no trend.
  }

  DecouplingResult result;
  const bool rising = tau >= 0.0 && p_rising < policy.trend_alpha;
  result.flag = contracting && rising;
  result.evidence.push_back(
      {"posterior_contraction",
       static_cast<double>(decreasing_steps) /
           static_cast<double>(checkpoints.size() - 1),
       1.0, contracting});
  result.evidence.push_back({"predictive_error_trend", p_rising, policy.trend_alpha,
                             rising});
  return result;
}

inline DecouplingResult decoupling_detect(const RunTrace& trace,
                                          const AuditPolicy& policy) {
  return decoupling_detect(std::span<const TraceRow>(trace.rows), policy);
}

/// Red-flag verdict over a completed trace: Suspend when both the decoupling
/// detector and the observable blocked-trend check trigger, RedFlag when
/// exactly one does, Proceed when neither does. Traces shorter than
/// policy.min_n are an error, never a silent Proceed.
inline AuditVerdict right_to_infer(std::span<const TraceRow> rows,
                                   const AuditPolicy& policy) {
  validate(policy);
  if (std::ssize(rows) < policy.min_n) {
    throw InsufficientDataError("right_to_infer: trace shorter than policy.min_n");
  }

  const DecouplingResult decoupling = decoupling_detect(rows, policy);

  std::vector<double> y;
  y.reserve(rows.size());
  for (const TraceRow& row : rows) {
    y.push_back(row.y);
  }
  const TrendResult trend = blocked_trend(y, policy.trend_blocks);
  const bool trend_triggered = trend.p_value < policy.trend_alpha;

  AuditVerdict verdict;
  verdict.decoupling_flag = decoupling.flag;
  verdict.trend = trend;
  double decoupling_p = 1.0;
  for (const Finding& finding : decoupling.evidence) {
    if (finding.check == "predictive_error_trend") {
      decoupling_p = finding.statistic;
    }
  }
  verdict.evidence.push_back(
      {"decoupling", decoupling_p, policy.trend_alpha, decoupling.flag});
  verdict.evidence.push_back(
      {"trend", trend.p_value, policy.trend_alpha, trend_triggered});

  if (decoupling.flag && trend_triggered) {
    verdict.status = AuditStatus::Suspend;
  } else if (decoupling.flag || trend_triggered) {
    verdict.status = AuditStatus::RedFlag;
  } else {
    verdict.status = AuditStatus::Proceed;
  }
  return verdict;
}

inline AuditVerdict right_to_infer(const RunTrace& trace, const AuditPolicy& policy) {
  return right_to_infer(std::span<const TraceRow>(trace.rows), policy);
}

struct CalibrationCell {
  std::string scenario;
  std::string check;  ///< "decoupling" or "trend"
  double rate = 0.0;
};

struct CalibrationReport {
  std::int64_t n_seeds = 0;
  std::vector<CalibrationCell> cells;
};

namespace detail {

inline std::string scenario_label(const ScenarioConfig& config, std::size_t index) {
  std::ostringstream out;
  out << "s" << index << ":" << to_string(config.drift.kind);
  if (config.drift.kind == DriftKind::Linear) {
    out << "(alpha=" << format_double(config.drift.alpha) << ")";
  } else if (config.drift.kind == DriftKind::RandomWalk) {
    out << "(sigma_rw=" << format_double(config.drift.sigma_rw) << ")";
  }
  return out.str();
}

}  // namespace detail

/// Monte Carlo trigger rates per check per scenario, used to validate the
/// policy's operating point. Requires at least one drifting and one
/// drift-free scenario and n_seeds >= 10.
inline CalibrationReport calibrate_policy(std::span<const ScenarioConfig> scenarios,
                                          std::int64_t n_seeds,
                                          const AuditPolicy& policy = {}) {
  if (n_seeds < 10) {
    throw ConfigError("calibrate_policy: n_seeds must be >= 10");
  }
  validate(policy);
  bool has_drift = false;
  bool has_null = false;
  for (const ScenarioConfig& scenario : scenarios) {
    validate(scenario);
    (scenario.drift.kind == DriftKind::None ? has_null : has_drift) = true;
  }
  if (!has_drift || !has_null) {
    throw ConfigError(
        "calibrate_policy: need at least one drift and one no-drift scenario");
  }

  CalibrationReport report;
  report.n_seeds = n_seeds;
  for (std::size_t idx = 0; idx < scenarios.size(); ++idx) {
    std::int64_t decoupling_hits = 0;
    std::int64_t trend_hits = 0;
    for (std::int64_t i = 0; i < n_seeds; ++i) {
      ScenarioConfig run_config = scenarios[idx];
      run_config.seed = scenarios[idx].seed + static_cast<std::uint64_t>(i);
      const RunTrace trace = run_scenario(run_config);
      const AuditVerdict verdict = right_to_infer(trace, policy);
      decoupling_hits += verdict.decoupling_flag ? 1 : 0;
      for (const Finding& finding : verdict.evidence) {
        if (finding.check == "trend" && finding.triggered) {
          ++trend_hits;
        }
      }
    }
    const std::string label = detail::scenario_label(scenarios[idx], idx);
    report.cells.push_back({label, "decoupling",
                            static_cast<double>(decoupling_hits) /
                                static_cast<double>(n_seeds)});
    report.cells.push_back(
        {label, "trend",
         static_cast<double>(trend_hits) / static_cast<double>(n_seeds)});
  }
  return report;
}

}  // namespace driftlab

#endif  // DRIFTLAB_AUDIT_HPP
