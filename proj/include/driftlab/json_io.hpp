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

#ifndef DRIFTLAB_JSON_IO_HPP
#define DRIFTLAB_JSON_IO_HPP

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "driftlab/audit.hpp"
#include "driftlab/drift.hpp"
#include "driftlab/trace.hpp"

namespace driftlab {

using json = nlohmann::json;

namespace detail {

inline void reject_unknown_fields(const json& object, const std::set<std::string>& known,
                                  const std::string& context) {
  for (const auto& item : object.items()) {
    if (!known.contains(item.key())) {
      throw ConfigError(context + ": unknown field '" + item.key() + "'");
    }
  }
}

inline double require_number(const json& object, const std::string& key,
                             const std::string& context) {
  if (!object.contains(key)) {
    throw ConfigError(context + ": missing field '" + key + "'");
  }
  if (!object[key].is_number()) {
    throw ConfigError(context + ": field '" + key + "' must be a number");
  }
  return object[key].get<double>();
}

inline std::int64_t require_integer(const json& object, const std::string& key,
                                    const std::string& context) {
  if (!object.contains(key)) {
    throw ConfigError(context + ": missing field '" + key + "'");
  }
  if (!object[key].is_number_integer() && !object[key].is_number_unsigned()) {
    throw ConfigError(context + ": field '" + key + "' must be an integer");
  }
  return object[key].get<std::int64_t>();
}

}  // namespace detail

inline json to_json(const DriftSpec& drift) {
  json out;
  out["kind"] = to_string(drift.kind);
  if (drift.kind == DriftKind::Linear) {
    out["alpha"] = drift.alpha;
  }
  if (drift.kind == DriftKind::RandomWalk) {
    out["sigma_rw"] = drift.sigma_rw;
  }
  return out;
}

inline DriftSpec drift_from_json(const json& object) {
  if (!object.is_object()) {
    throw ConfigError("drift: must be an object");
  }
  if (!object.contains("kind") || !object["kind"].is_string()) {
    throw ConfigError("drift: missing string field 'kind'");
  }
  const std::string kind = object["kind"].get<std::string>();
  DriftSpec drift;
  if (kind == "none") {
    detail::reject_unknown_fields(object, {"kind"}, "drift(none)");
    drift = DriftSpec::none();
  } else if (kind == "linear") {
    detail::reject_unknown_fields(object, {"kind", "alpha"}, "drift(linear)");
    drift = DriftSpec::linear(detail::require_number(object, "alpha", "drift(linear)"));
  } else if (kind == "random_walk") {
    detail::reject_unknown_fields(object, {"kind", "sigma_rw"}, "drift(random_walk)");
    drift = DriftSpec::random_walk(
        detail::require_number(object, "sigma_rw", "drift(random_walk)"));
  } else {
    throw ConfigError("drift: kind must be one of none|linear|random_walk");
  }
  validate(drift);
  return drift;
}

inline json to_json(const ScenarioConfig& config) {
  json out;
  out["theta_star"] = config.theta_star;
  out["sigma"] = config.sigma;
  out["n"] = config.n;
  out["prior_mean"] = config.prior_mean;
  out["prior_var"] = config.prior_var;
  out["drift"] = to_json(config.drift);
  out["seed"] = config.seed;
  if (config.window) {
    out["window"] = *config.window;
  }
  return out;
}

/// Parses a scenario config; the schema mirrors ScenarioConfig exactly and
/// unknown fields are rejected.
inline ScenarioConfig scenario_from_json(const json& object) {
  if (!object.is_object()) {
    throw ConfigError("scenario: must be an object");
  }
  detail::reject_unknown_fields(object,
                                {"theta_star", "sigma", "n", "prior_mean", "prior_var",
                                 "drift", "seed", "window"},
                                "scenario");
  ScenarioConfig config;
  config.theta_star = detail::require_number(object, "theta_star", "scenario");
  config.sigma = detail::require_number(object, "sigma", "scenario");
  config.n = detail::require_integer(object, "n", "scenario");
  config.prior_mean = detail::require_number(object, "prior_mean", "scenario");
  config.prior_var = detail::require_number(object, "prior_var", "scenario");
  if (!object.contains("drift")) {
    throw ConfigError("scenario: missing field 'drift'");
  }
  config.drift = drift_from_json(object["drift"]);
  if (!object.contains("seed")) {
    throw ConfigError("scenario: missing field 'seed'");
  }
  if (!object["seed"].is_number_integer() && !object["seed"].is_number_unsigned()) {
    throw ConfigError("scenario: field 'seed' must be an integer");
  }
  config.seed = object["seed"].get<std::uint64_t>();
  if (object.contains("window")) {
    config.window = detail::require_integer(object, "window", "scenario");
  }
  validate(config);
  return config;
}

inline ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config: " + path.string());
  }
  json object;
  try {
    in >> object;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return scenario_from_json(object);
}

inline json to_json(const AuditPolicy& policy) {
  json out;
  out["pred_window"] = policy.pred_window;
  out["decouple_horizon"] = policy.decouple_horizon;
  out["trend_blocks"] = policy.trend_blocks;
  out["trend_alpha"] = policy.trend_alpha;
  out["min_n"] = policy.min_n;
  return out;
}

inline AuditPolicy policy_from_json(const json& object) {
  if (!object.is_object()) {
    throw ConfigError("policy: must be an object");
  }
  detail::reject_unknown_fields(
      object, {"pred_window", "decouple_horizon", "trend_blocks", "trend_alpha", "min_n"},
      "policy");
  AuditPolicy policy;
  policy.pred_window = detail::require_integer(object, "pred_window", "policy");
  policy.decouple_horizon = detail::require_integer(object, "decouple_horizon", "policy");
  policy.trend_blocks = detail::require_integer(object, "trend_blocks", "policy");
  policy.trend_alpha = detail::require_number(object, "trend_alpha", "policy");
  policy.min_n = detail::require_integer(object, "min_n", "policy");
  validate(policy);
  return policy;
}

inline AuditPolicy load_policy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open policy: " + path.string());
  }
  json object;
  try {
    in >> object;
  } catch (const json::exception& e) {
    throw ConfigError("policy " + path.string() + ": " + e.what());
  }
  return policy_from_json(object);
}

inline json to_json(const TrendResult& trend) {
  json out;
  out["tau"] = trend.tau;
  out["p_value"] = trend.p_value;
  out["n"] = trend.n;
  return out;
}

inline json to_json(const ResidualStats& stats) {
  json out;
  out["mean"] = stats.mean;
  out["variance"] = stats.variance;
  out["n"] = stats.n;
  return out;
}

inline json to_json(const Finding& finding) {
  json out;
  out["check"] = finding.check;
  out["statistic"] = finding.statistic;
  out["threshold"] = finding.threshold;
  out["triggered"] = finding.triggered;
  return out;
}

inline json to_json(const AuditVerdict& verdict) {
  json out;
  out["status"] = to_string(verdict.status);
  out["decoupling_flag"] = verdict.decoupling_flag;
  out["trend"] = verdict.trend ? to_json(*verdict.trend) : json(nullptr);
  json evidence = json::array();
  for (const Finding& finding : verdict.evidence) {
    evidence.push_back(to_json(finding));
  }
  out["evidence"] = evidence;
  return out;
}

inline json to_json(const CalibrationReport& report) {
  json out;
  out["n_seeds"] = report.n_seeds;
  json cells = json::array();
  for (const CalibrationCell& cell : report.cells) {
    json row;
    row["scenario"] = cell.scenario;
    row["check"] = cell.check;
    row["rate"] = cell.rate;
    cells.push_back(row);
  }
  out["cells"] = cells;
  return out;
}

}  // namespace driftlab

#endif  // DRIFTLAB_JSON_IO_HPP
