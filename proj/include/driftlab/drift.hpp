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

#ifndef DRIFTLAB_DRIFT_HPP
#define DRIFTLAB_DRIFT_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "driftlab/errors.hpp"
#include "driftlab/rng.hpp"

namespace driftlab {

enum class DriftKind { None, Linear, RandomWalk };

inline const char* to_string(DriftKind kind) noexcept {
  switch (kind) {
    case DriftKind::None:
      return "none";
    case DriftKind::Linear:
      return "linear";
    case DriftKind::RandomWalk:
      return "random_walk";
  }
  return "none";
}

/// Parameterization of the observation-bias process b_t. The bias is part of
/// the generator only: estimators never see it.
///
/// none:        b_t = 0
/// linear:      b_t = alpha * t                      (t is 1-based)
/// random_walk: b_t = sum_{k=1..t} eta_k,  eta_k ~ N(0, sigma_rw^2), b_0 = 0
struct DriftSpec {
  DriftKind kind = DriftKind::None;
  double alpha = 0.0;     ///< bias units per step; used iff kind == Linear
  double sigma_rw = 0.0;  ///< innovation std dev per step; used iff kind == RandomWalk

  static DriftSpec none() { return {}; }
  static DriftSpec linear(double alpha) { return {DriftKind::Linear, alpha, 0.0}; }
  static DriftSpec random_walk(double sigma_rw) {
    return {DriftKind::RandomWalk, 0.0, sigma_rw};
  }
};

inline void validate(const DriftSpec& drift) {
  switch (drift.kind) {
    case DriftKind::None:
      return;  // parameters ignored
    case DriftKind::Linear:
      if (!std::isfinite(drift.alpha)) {
        throw ConfigError("drift: linear alpha must be finite");
      }
      return;
    case DriftKind::RandomWalk:
      if (!(drift.sigma_rw > 0.0) || !std::isfinite(drift.sigma_rw)) {
        throw ConfigError("drift: random_walk sigma_rw must be finite and > 0");
      }
      return;
  }
  throw ConfigError("drift: unknown kind");
}

/// Full description of one synthetic experiment.
struct ScenarioConfig {
  double theta_star = 0.0;  ///< true parameter
  double sigma = 1.0;       ///< observation noise std dev (sigma^2 is the variance)
  std::int64_t n = 5000;    ///< stream length
  double prior_mean = 0.0;  ///< prior N(prior_mean, prior_var)
  double prior_var = 100.0;
  DriftSpec drift;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> window;  ///< sliding-window size W, if a window
                                       ///< estimator should run alongside
};

inline void validate(const ScenarioConfig& config) {
  if (!std::isfinite(config.theta_star)) {
    throw ConfigError("scenario: theta_star must be finite");
  }
  if (!(config.sigma > 0.0) || !std::isfinite(config.sigma)) {
    throw ConfigError("scenario: sigma must be finite and > 0");
  }
  if (config.n < 1) {
    throw ConfigError("scenario: n must be >= 1");
  }
  if (!std::isfinite(config.prior_mean)) {
    throw ConfigError("scenario: prior_mean must be finite");
  }
  if (!(config.prior_var > 0.0) || !std::isfinite(config.prior_var)) {
    throw ConfigError("scenario: prior_var must be finite and > 0");
  }
  validate(config.drift);
  if (config.window && (*config.window < 1 || *config.window > config.n)) {
    throw ConfigError("scenario: window must satisfy 1 <= W <= n");
  }
}

/// One observation. b_true is the realized bias, carried only for oracle
/// checks and trace output; estimator code paths receive plain y values.
struct ObservationRecord {
  std::int64_t t = 0;  ///< 1-based step index
  double y = 0.0;
  double b_true = 0.0;
};

/// Realizes the bias path b_1..b_n. `rng` must be the drift substream
/// (stream id Substream::kDriftStream) positioned at its start; it is only
/// consumed for random-walk drift.
inline std::vector<double> realize_bias(const DriftSpec& drift, std::int64_t n,
                                        Substream& rng) {
  validate(drift);
  if (n < 1) {
    throw ConfigError("realize_bias: n must be >= 1");
  }
  std::vector<double> bias(static_cast<std::size_t>(n), 0.0);
  switch (drift.kind) {
    case DriftKind::None:
      break;
    case DriftKind::Linear:
      for (std::int64_t t = 1; t <= n; ++t) {
        bias[static_cast<std::size_t>(t - 1)] = drift.alpha * static_cast<double>(t);
      }
      break;
    case DriftKind::RandomWalk: {
      double level = 0.0;
      for (std::int64_t t = 1; t <= n; ++t) {
        level += drift.sigma_rw * rng.next_normal();
        bias[static_cast<std::size_t>(t - 1)] = level;
      }
      break;
    }
  }
  return bias;
}

/// Generates y_t = theta_star + eps_t + b_t with eps_t ~ N(0, sigma^2).
///
/// Noise draws come from substream 0 and drift innovations from substream 1,
/// so switching the drift kind leaves the noise realization untouched.
/// Identical configs produce bitwise-identical streams.
inline std::vector<ObservationRecord> generate_stream(const ScenarioConfig& config) {
  validate(config);
  Substream noise(config.seed, Substream::kNoiseStream);
  Substream drift_rng(config.seed, Substream::kDriftStream);
  const std::vector<double> bias = realize_bias(config.drift, config.n, drift_rng);

  std::vector<ObservationRecord> stream;
  stream.reserve(static_cast<std::size_t>(config.n));
  for (std::int64_t t = 1; t <= config.n; ++t) {
    const double eps = config.sigma * noise.next_normal();
    const double b = bias[static_cast<std::size_t>(t - 1)];
    stream.push_back({t, config.theta_star + eps + b, b});
  }
  return stream;
}

}  // namespace driftlab

#endif  // DRIFTLAB_DRIFT_HPP
