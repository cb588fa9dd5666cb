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

#include <cmath>
#include <functional>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "driftlab/audit.hpp"
#include "driftlab/json_io.hpp"
#include "test_support.hpp"

using namespace driftlab;

namespace {

std::vector<TraceRow> synthetic_rows(std::int64_t n,
                                     const std::function<double(std::int64_t)>& y,
                                     const std::function<double(std::int64_t)>& post_var,
                                     const std::function<double(std::int64_t)>& pred_err) {
  std::vector<TraceRow> rows;
  for (std::int64_t t = 1; t <= n; ++t) {
    TraceRow row;
    row.t = t;
    row.y = y(t);
    row.b_true = 0.0;
    row.post_mean = 0.0;
    row.post_var = post_var(t);
    row.abs_error = 0.0;
    if (t > 1) {
      row.pred_err = pred_err(t);
    }
    rows.push_back(row);
  }
  return rows;
}

// mild deterministic wiggle so block means are never exactly tied
double wiggle(std::int64_t t) {
  return 1e-6 * std::sin(static_cast<double>(t) * 0.7);
}

}  // namespace

TEST_CASE("decoupling fires on contracting variance with rising predictive error") {
  const auto rows = synthetic_rows(
      400, [](std::int64_t t) { return wiggle(t); },
      [](std::int64_t t) { return 1.0 / static_cast<double>(t); },
      [](std::int64_t t) { return static_cast<double>(t) / 1000.0; });
  const DecouplingResult result = decoupling_detect(rows, AuditPolicy{});
  CHECK(result.flag);
  REQUIRE(result.evidence.size() == 2);
  CHECK(result.evidence[0].check == "posterior_contraction");
  CHECK(result.evidence[0].triggered);
  CHECK(result.evidence[1].check == "predictive_error_trend");
  CHECK(result.evidence[1].triggered);
  CHECK(result.evidence[1].statistic < 0.01);
}

TEST_CASE("constant predictive error does not trigger the trend clause") {
  // contraction alone is not decoupling evidence under the calibrated
  // detector; a flat predictive-error profile stays unflagged
  const auto rows = synthetic_rows(
      400, [](std::int64_t t) { return wiggle(t); },
      [](std::int64_t t) { return 1.0 / static_cast<double>(t); },
      [](std::int64_t) { return 1.0; });
  const DecouplingResult result = decoupling_detect(rows, AuditPolicy{});
  CHECK_FALSE(result.flag);
  CHECK(result.evidence[0].triggered);        // variance does contract
  CHECK_FALSE(result.evidence[1].triggered);  // no rising trend in a constant
}

TEST_CASE("no flag when the posterior variance stops contracting") {
  const auto rows = synthetic_rows(
      400, [](std::int64_t t) { return wiggle(t); },
      [](std::int64_t t) { return t < 300 ? 1.0 / static_cast<double>(t) : 0.004; },
      [](std::int64_t t) { return static_cast<double>(t) / 1000.0; });
  const DecouplingResult result = decoupling_detect(rows, AuditPolicy{});
  CHECK_FALSE(result.flag);
  CHECK_FALSE(result.evidence[0].triggered);
  CHECK(result.evidence[1].triggered);
}

TEST_CASE("decoupling needs min_n rows") {
  const auto rows = synthetic_rows(
      100, [](std::int64_t) { return 0.0; },
      [](std::int64_t t) { return 1.0 / static_cast<double>(t); },
      [](std::int64_t) { return 1.0; });
  CHECK_THROWS_AS(decoupling_detect(rows, AuditPolicy{}), InsufficientDataError);
}

TEST_CASE("policy validation") {
  AuditPolicy policy;
  policy.pred_window = 1;
  CHECK_THROWS_AS(validate(policy), ConfigError);
  policy = {};
  policy.decouple_horizon = 2;
  CHECK_THROWS_AS(validate(policy), ConfigError);
  policy = {};
  policy.trend_alpha = 0.0;
  CHECK_THROWS_AS(validate(policy), ConfigError);
  policy = {};
  policy.trend_alpha = 1.0;
  CHECK_THROWS_AS(validate(policy), ConfigError);
  policy = {};
  policy.min_n = 0;
  CHECK_THROWS_AS(validate(policy), ConfigError);
}

TEST_CASE("right_to_infer suspends a drifting run") {
  ScenarioConfig config;
  config.n = 5000;
  config.drift = DriftSpec::linear(0.002);
  config.seed = 11;
  const RunTrace trace = run_scenario(config);
  const AuditVerdict verdict = right_to_infer(trace, AuditPolicy{});
  CHECK(verdict.status == AuditStatus::Suspend);
  CHECK(verdict.decoupling_flag);
  REQUIRE(verdict.trend.has_value());
  CHECK(verdict.trend->tau > 0.0);
  CHECK(verdict.trend->p_value < 0.01);
  REQUIRE(verdict.evidence.size() == 2);
  for (const Finding& finding : verdict.evidence) {
    CHECK(finding.triggered);
  }
}

TEST_CASE("right_to_infer proceeds on a clean run") {
  ScenarioConfig config;
  config.n = 5000;
  config.seed = 11;
  const RunTrace trace = run_scenario(config);
  const AuditVerdict verdict = right_to_infer(trace, AuditPolicy{});
  CHECK(verdict.status == AuditStatus::Proceed);
  CHECK_FALSE(verdict.decoupling_flag);
  for (const Finding& finding : verdict.evidence) {
    CHECK_FALSE(finding.triggered);
  }
}

TEST_CASE("verdict statuses follow the finding count monotonically") {
  // decoupling only -> RedFlag
  const auto decoupling_only = synthetic_rows(
      400, [](std::int64_t t) { return wiggle(t); },
      [](std::int64_t t) { return 1.0 / static_cast<double>(t); },
      [](std::int64_t t) { return static_cast<double>(t) / 1000.0; });
  const AuditVerdict red1 = right_to_infer(decoupling_only, AuditPolicy{});
  CHECK(red1.status == AuditStatus::RedFlag);
  CHECK(red1.decoupling_flag);

  // observable trend only -> RedFlag
  const auto trend_only = synthetic_rows(
      400, [](std::int64_t t) { return static_cast<double>(t) + wiggle(t); },
      [](std::int64_t t) { return 1.0 / static_cast<double>(t); },
      [](std::int64_t t) { return 1.0 / static_cast<double>(t); });
  const AuditVerdict red2 = right_to_infer(trend_only, AuditPolicy{});
  CHECK(red2.status == AuditStatus::RedFlag);
  CHECK_FALSE(red2.decoupling_flag);

  // both -> Suspend
  const auto both = synthetic_rows(
      400, [](std::int64_t t) { return static_cast<double>(t) + wiggle(t); },
      [](std::int64_t t) { return 1.0 / static_cast<double>(t); },
      [](std::int64_t t) { return static_cast<double>(t) / 1000.0; });
  const AuditVerdict suspend = right_to_infer(both, AuditPolicy{});
  CHECK(suspend.status == AuditStatus::Suspend);

  // neither -> Proceed
  const auto neither = synthetic_rows(
      400, [](std::int64_t t) { return wiggle(t); },
      [](std::int64_t t) { return 1.0 / static_cast<double>(t); },
      [](std::int64_t) { return 1.0; });
  const AuditVerdict proceed = right_to_infer(neither, AuditPolicy{});
  CHECK(proceed.status == AuditStatus::Proceed);
}

TEST_CASE("audits of the same trace are identical") {
  ScenarioConfig config;
  config.n = 1000;
  config.drift = DriftSpec::linear(0.002);
  config.seed = 5;
  const RunTrace trace = run_scenario(config);
  const AuditVerdict a = right_to_infer(trace, AuditPolicy{});
  const AuditVerdict b = right_to_infer(trace, AuditPolicy{});
  CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("short traces are an error, never a silent Proceed") {
  ScenarioConfig config;
  config.n = 120;
  config.seed = 5;
  const RunTrace trace = run_scenario(config);
  CHECK_THROWS_AS(right_to_infer(trace, AuditPolicy{}), InsufficientDataError);
}

TEST_CASE("calibrate_policy rejects meaningless inputs") {
  ScenarioConfig drift_config;
  drift_config.n = 400;
  drift_config.drift = DriftSpec::linear(0.002);
  ScenarioConfig null_config;
  null_config.n = 400;

  const std::vector<ScenarioConfig> both{drift_config, null_config};
  CHECK_THROWS_AS(calibrate_policy(both, 9), ConfigError);

  const std::vector<ScenarioConfig> only_drift{drift_config};
  CHECK_THROWS_AS(calibrate_policy(only_drift, 20), ConfigError);
  const std::vector<ScenarioConfig> only_null{null_config};
  CHECK_THROWS_AS(calibrate_policy(only_null, 20), ConfigError);
}

TEST_CASE("calibrate_policy reports one rate cell per scenario and check") {
  ScenarioConfig drift_config;
  drift_config.n = 600;
  drift_config.drift = DriftSpec::linear(0.002);
  drift_config.seed = 100;
  ScenarioConfig null_config = drift_config;
  null_config.drift = DriftSpec::none();

  const std::vector<ScenarioConfig> scenarios{drift_config, null_config};
  const CalibrationReport report = calibrate_policy(scenarios, 12);
  REQUIRE(report.cells.size() == 4);
  for (const CalibrationCell& cell : report.cells) {
    CHECK(cell.rate >= 0.0);
    CHECK(cell.rate <= 1.0);
  }
  CHECK(report.n_seeds == 12);
}

TEST_CASE("the audit never reads generator-private or truth-derived fields") {
  ScenarioConfig config;
  config.n = 1000;
  config.drift = DriftSpec::linear(0.002);
  config.seed = 3;
  const RunTrace trace = run_scenario(config);
  std::vector<TraceRow> poisoned = trace.rows;
  for (TraceRow& row : poisoned) {
    row.b_true = std::nan("");
    row.abs_error = std::nan("");
    row.post_mean = std::nan("");
  }
  const AuditVerdict clean = right_to_infer(trace, AuditPolicy{});
  const AuditVerdict blind = right_to_infer(poisoned, AuditPolicy{});
  CHECK(to_json(clean).dump() == to_json(blind).dump());
}

TEST_CASE("calibrate_policy reproduces the null rejection rate of its alpha") {
  ScenarioConfig null_config;
  null_config.n = 2000;
  null_config.seed = 7000;
  ScenarioConfig drift_config = null_config;
  drift_config.drift = DriftSpec::linear(0.002);

  AuditPolicy policy;
  policy.trend_alpha = 0.05;
  const std::vector<ScenarioConfig> scenarios{drift_config, null_config};
  const CalibrationReport report = calibrate_policy(scenarios, 1000, policy);

  double null_trend_rate = -1.0;
  double drift_trend_rate = -1.0;
  for (const CalibrationCell& cell : report.cells) {
    if (cell.check == "trend") {
      (cell.scenario.find("none") != std::string::npos ? null_trend_rate
                                                       : drift_trend_rate) = cell.rate;
    }
  }
  REQUIRE(null_trend_rate >= 0.03);
  REQUIRE(null_trend_rate <= 0.07);
  REQUIRE(drift_trend_rate > 0.99);
}

TEST_CASE("a linear drift with alpha = 0 is the null, exactly") {
  ScenarioConfig zero_alpha;
  zero_alpha.n = 600;
  zero_alpha.drift = DriftSpec::linear(0.0);
  zero_alpha.seed = 500;
  ScenarioConfig null_config = zero_alpha;
  null_config.drift = DriftSpec::none();

  const std::vector<ScenarioConfig> scenarios{zero_alpha, null_config};
  const CalibrationReport report = calibrate_policy(scenarios, 20);
  REQUIRE(report.cells.size() == 4);
  // same seeds, same noise substream, zero bias either way: identical rates
  CHECK(report.cells[0].rate == report.cells[2].rate);
  CHECK(report.cells[1].rate == report.cells[3].rate);
}
