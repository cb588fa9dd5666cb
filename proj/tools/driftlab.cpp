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

// Command-line front end: simulate / diagnose / audit / trend / replicate /
// reproduce. Machine-readable results go to stdout as JSON or CSV; prose goes
// to stderr. Exit codes: 0 success, 1 data or config error, 2 usage error,
// 3 audit verdict "suspend".

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "driftlab/driftlab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSuspend = 3;

void emit_json(const driftlab::json& payload, const std::optional<std::string>& out_path) {
  const std::string text = payload.dump(2);
  std::cout << text << '\n';
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) {
      throw driftlab::IoError("cannot open for writing: " + *out_path);
    }
    out << text << '\n';
  }
}

int run_simulate(const std::string& config_path, const std::string& out_path,
                 const std::optional<std::uint64_t>& seed_override) {
  driftlab::ScenarioConfig config = driftlab::load_scenario(config_path);
  const bool overridden = seed_override.has_value();
  if (overridden) {
    config.seed = *seed_override;
  }
  driftlab::RunTrace trace = driftlab::run_scenario(config);
  trace.metadata.seed_overridden = overridden;
  driftlab::write_trace_csv(trace, std::filesystem::path(out_path));
  std::cerr << "wrote " << out_path << " (" << trace.rows.size() << " rows, seed "
            << config.seed << ")\n";
  return kExitOk;
}

int run_diagnose(const std::string& trace_path, double theta_star,
                 const std::optional<std::string>& out_path) {
  const driftlab::TraceFile file =
      driftlab::read_trace_csv(std::filesystem::path(trace_path));
  if (file.rows.empty()) {
    throw driftlab::InsufficientDataError("diagnose: trace has no rows");
  }
  std::vector<double> y;
  std::vector<double> b_true;
  y.reserve(file.rows.size());
  b_true.reserve(file.rows.size());
  for (const driftlab::TraceRow& row : file.rows) {
    y.push_back(row.y);
    b_true.push_back(row.b_true);
  }
  const double theta_hat = file.rows.back().post_mean;
  const double limit = driftlab::prop1_limit(b_true, theta_star);

  driftlab::json report;
  report["n"] = file.rows.size();
  report["theta_star"] = theta_star;
  report["theta_hat"] = theta_hat;
  report["post_var"] = file.rows.back().post_var;
  report["abs_error"] = driftlab::absolute_error(theta_hat, theta_star);
  report["residuals"] = driftlab::to_json(driftlab::residual_stats(y, theta_hat));
  report["prop1_limit"] = limit;
  report["prop1_gap"] = std::abs(theta_hat - limit);
  emit_json(report, out_path);
  return kExitOk;
}

int run_audit(const std::string& trace_path, const std::optional<std::string>& policy_path,
              const std::optional<std::string>& out_path) {
  const driftlab::TraceFile file =
      driftlab::read_trace_csv(std::filesystem::path(trace_path));
  driftlab::AuditPolicy policy;
  if (policy_path) {
    policy = driftlab::load_policy(*policy_path);
  }
  const driftlab::AuditVerdict verdict = driftlab::right_to_infer(file.rows, policy);
  emit_json(driftlab::to_json(verdict), out_path);
  return verdict.status == driftlab::AuditStatus::Suspend ? kExitSuspend : kExitOk;
}

int run_trend(const std::string& input_path, const std::string& value_col,
              const std::optional<std::string>& time_col, std::int64_t blocks,
              const std::optional<std::string>& out_path) {
  const std::vector<driftlab::TimedValue> data =
      driftlab::ingest_csv(std::filesystem::path(input_path), value_col, time_col);
  std::vector<double> values;
  values.reserve(data.size());
  for (const driftlab::TimedValue& point : data) {
    values.push_back(point.value);
  }
  const driftlab::TrendResult result =
      blocks > 0 ? driftlab::blocked_trend(values, blocks)
                 : driftlab::kendall_tau_test(values);
  emit_json(driftlab::to_json(result), out_path);
  return kExitOk;
}

int run_replicate(const std::string& config_path, std::int64_t seeds,
                  const std::optional<std::uint64_t>& seed_override,
                  const std::optional<std::string>& out_path) {
  driftlab::ScenarioConfig config = driftlab::load_scenario(config_path);
  if (seed_override) {
    config.seed = *seed_override;
  }
  const driftlab::ReplicateSummary summary = driftlab::replicate(config, seeds);
  std::ostringstream csv;
  driftlab::write_replicate_csv(summary, csv);
  std::cout << csv.str();
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) {
      throw driftlab::IoError("cannot open for writing: " + *out_path);
    }
    out << csv.str();
  }
  return kExitOk;
}

int run_reproduce(const std::string& figure, const std::string& out_dir) {
  const std::optional<driftlab::FigureId> id = driftlab::parse_figure_id(figure);
  if (!id) {
    throw driftlab::ConfigError("unknown figure '" + figure +
                                "' (expected F1..F7 or E2-1..E2-4)");
  }
  const driftlab::EmittedFigure emitted =
      driftlab::reproduce_figure(*id, std::filesystem::path(out_dir));
  std::cerr << "wrote " << emitted.csv.string() << " and " << emitted.svg.string()
            << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drift simulation and inference auditing toolkit"};
  app.set_version_flag("--version", std::string(driftlab::kVersion));
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "generate a trace CSV from a scenario");
  std::string sim_config;
  std::string sim_out;
  std::optional<std::uint64_t> sim_seed;
  simulate->add_option("--config", sim_config, "scenario config JSON")->required();
  simulate->add_option("--out", sim_out, "output trace CSV path")->required();
  simulate->add_option("--seed", sim_seed, "override the config seed");

  // diagnose
  auto* diagnose = app.add_subcommand("diagnose", "residual and bias diagnostics of a trace");
  std::string diag_trace;
  double diag_theta = 0.0;
  std::optional<std::string> diag_out;
  diagnose->add_option("trace", diag_trace, "trace CSV")->required();
  diagnose->add_option("--theta-star", diag_theta, "true parameter value")->required();
  diagnose->add_option("--out", diag_out, "also write the JSON report here");

  // audit
  auto* audit = app.add_subcommand("audit", "right-to-infer verdict over a trace");
  std::string audit_trace;
  std::optional<std::string> audit_policy;
  std::optional<std::string> audit_out;
  audit->add_option("trace", audit_trace, "trace CSV")->required();
  audit->add_option("--policy", audit_policy, "audit policy JSON (defaults apply)");
  audit->add_option("--out", audit_out, "also write the verdict JSON here");

  // trend
  auto* trend = app.add_subcommand("trend", "Kendall trend test on a CSV column");
  std::string trend_input;
  std::string trend_value_col;
  std::optional<std::string> trend_time_col;
  std::int64_t trend_blocks = 0;
  std::optional<std::string> trend_out;
  trend->add_option("--input", trend_input, "input CSV")->required();
  trend->add_option("--value-col", trend_value_col, "value column name")->required();
  trend->add_option("--time-col", trend_time_col, "time column to order by");
  trend->add_option("--blocks", trend_blocks,
                    "test block means instead of raw values (0 = raw)");
  trend->add_option("--out", trend_out, "also write the JSON result here");

  // replicate
  auto* replicate = app.add_subcommand("replicate", "multi-seed replication summary");
  std::string rep_config;
  std::int64_t rep_seeds = 0;
  std::optional<std::uint64_t> rep_seed;
  std::optional<std::string> rep_out;
  replicate->add_option("--config", rep_config, "scenario config JSON")->required();
  replicate->add_option("--seeds", rep_seeds, "number of consecutive seeds")->required();
  replicate->add_option("--seed", rep_seed, "override the config base seed");
  replicate->add_option("--out", rep_out, "also write the summary CSV here");

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "emit a figure preset (CSV + SVG)");
  std::string fig_id;
  std::string fig_out;
  reproduce->add_option("--figure", fig_id, "figure id (F1..F7, E2-1..E2-4)")->required();
  reproduce->add_option("--out", fig_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      return run_simulate(sim_config, sim_out, sim_seed);
    }
    if (diagnose->parsed()) {
      return run_diagnose(diag_trace, diag_theta, diag_out);
    }
    if (audit->parsed()) {
      return run_audit(audit_trace, audit_policy, audit_out);
    }
    if (trend->parsed()) {
      return run_trend(trend_input, trend_value_col, trend_time_col, trend_blocks,
                       trend_out);
    }
    if (replicate->parsed()) {
      return run_replicate(rep_config, rep_seeds, rep_seed, rep_out);
    }
    if (reproduce->parsed()) {
      return run_reproduce(fig_id, fig_out);
    }
  } catch (const driftlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
