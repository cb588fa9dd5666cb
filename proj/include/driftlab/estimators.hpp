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

#ifndef DRIFTLAB_ESTIMATORS_HPP
#define DRIFTLAB_ESTIMATORS_HPP

#include <cmath>
#include <cstdint>
#include <deque>

#include "driftlab/errors.hpp"

namespace driftlab {

/// Conjugate posterior for the mean of a Gaussian likelihood with known
/// noise variance. State is kept in precision form to stay well conditioned
/// at large counts; it is exposed as (mean, variance, count).
///
/// These estimators are deliberately stationarity-assuming: they receive
/// plain y values and nothing else.
class GaussianPosterior {
 public:
  /// Prior state N(mean, variance) with count 0.
  GaussianPosterior(double mean, double variance) : mean_(mean) {
    if (!std::isfinite(mean)) {
      throw ConfigError("posterior: mean must be finite");
    }
    if (!(variance > 0.0) || !std::isfinite(variance)) {
      throw ConfigError("posterior: variance must be finite and > 0");
    }
    precision_ = 1.0 / variance;
  }

  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return 1.0 / precision_; }
  double precision() const noexcept { return precision_; }
  std::int64_t count() const noexcept { return count_; }

  friend GaussianPosterior conjugate_update(const GaussianPosterior& post, double y,
                                            double sigma);

 private:
  double mean_;
  double precision_;
  std::int64_t count_ = 0;
};

/// One analytic conjugate step: with p the current precision and q = 1/sigma^2,
/// the updated state is variance 1/(p+q), mean (p*mean + q*y)/(p+q).
/// Returns a new state; the input is not modified.
inline GaussianPosterior conjugate_update(const GaussianPosterior& post, double y,
                                          double sigma) {
  if (!std::isfinite(y)) {
    throw DataError("conjugate_update: observation must be finite");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("conjugate_update: sigma must be finite and > 0");
  }
  const double p = post.precision_;
  const double q = 1.0 / (sigma * sigma);
  GaussianPosterior next = post;
  next.precision_ = p + q;
  next.mean_ = (p * post.mean_ + q * y) / next.precision_;
  next.count_ = post.count_ + 1;
  return next;
}

/// Squared one-step-ahead prediction residual (y_next - mean)^2, evaluated
/// before y_next is absorbed. Requires at least one absorbed observation.
inline double one_step_predictive_error(const GaussianPosterior& post, double y_next) {
  if (post.count() < 1) {
    throw NotReadyError("predictive error undefined before the first update");
  }
  if (!std::isfinite(y_next)) {
    throw DataError("one_step_predictive_error: observation must be finite");
  }
  const double r = y_next - post.mean();
  return r * r;
}

/// Forgetting baseline: arithmetic mean of the most recent W observations.
class SlidingWindow {
 public:
  explicit SlidingWindow(std::int64_t window) : window_(window) {
    if (window < 1) {
      throw ConfigError("sliding window: W must be >= 1");
    }
  }

  /// Appends y, evicting the oldest value once the buffer holds W.
  void push(double y) {
    if (!std::isfinite(y)) {
      throw DataError("sliding window: observation must be finite");
    }
    buffer_.push_back(y);
    if (std::ssize(buffer_) > window_) {
      buffer_.pop_front();
    }
  }

  /// Mean of the buffer. Summation is anchored at the first element, so a
  /// constant buffer yields the constant exactly.
  double mean() const {
    if (buffer_.empty()) {
      throw NotReadyError("sliding window: no observations yet");
    }
    const double anchor = buffer_.front();
    double sum = 0.0;
    for (double v : buffer_) {
      sum += v - anchor;
    }
    return anchor + sum / static_cast<double>(buffer_.size());
  }

  std::int64_t size() const noexcept { return std::ssize(buffer_); }
  std::int64_t window() const noexcept { return window_; }
  bool empty() const noexcept { return buffer_.empty(); }

 private:
  std::int64_t window_;
  std::deque<double> buffer_;
};

}  // namespace driftlab

#endif  // DRIFTLAB_ESTIMATORS_HPP
