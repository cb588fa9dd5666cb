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

#ifndef DRIFTLAB_DIAGNOSTICS_HPP
#define DRIFTLAB_DIAGNOSTICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "driftlab/errors.hpp"

namespace driftlab {

/// Absolute inference error |post_mean - theta_star|.
inline double absolute_error(double post_mean, double theta_star) {
  return std::abs(post_mean - theta_star);
}

/// Mean and sample variance (n-1 denominator) of residuals r_t = y_t - theta_hat,
/// with theta_hat the final posterior mean.
struct ResidualStats {
  double mean = 0.0;
  double variance = 0.0;
  std::int64_t n = 0;
};

inline ResidualStats residual_stats(std::span<const double> y, double theta_hat_final) {
  const std::int64_t n = std::ssize(y);
  if (n < 2) {
    throw InsufficientDataError("residual_stats: need at least 2 observations");
  }
  if (!std::isfinite(theta_hat_final)) {
    throw DataError("residual_stats: theta_hat must be finite");
  }
  double sum = 0.0;
  for (double v : y) {
    if (!std::isfinite(v)) {
      throw DataError("residual_stats: observations must be finite");
    }
    sum += v - theta_hat_final;
  }
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : y) {
    const double d = (v - theta_hat_final) - mean;
    ss += d * d;
  }
  return {mean, ss / static_cast<double>(n - 1), n};
}

/// Finite-n version of the biased convergence limit: theta_star plus the
/// time-averaged realized bias. A stationarity-assuming consistent estimator
/// lands here, not at theta_star.
inline double prop1_limit(std::span<const double> b_true, double theta_star) {
  if (b_true.empty()) {
    throw InsufficientDataError("prop1_limit: empty bias sequence");
  }
  double sum = 0.0;
  for (double b : b_true) {
    sum += b;
  }
  return theta_star + sum / static_cast<double>(b_true.size());
}

struct TrendResult {
  double tau = 0.0;      ///< Kendall's tau (tau-b tie convention), in [-1, 1]
  double p_value = 1.0;  ///< in (0, 1]
  std::int64_t n = 0;    ///< tested sequence length
};

enum class TrendAlternative { TwoSided, Increasing, Decreasing };

namespace detail {

inline double normal_upper_tail(double z) {
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

/// Strict inversions (pairs i<j with v[i] > v[j]) by merge counting.
/// Equal elements are merged left-first and not counted.
inline std::uint64_t merge_count_inversions(std::vector<double>& v,
                                            std::vector<double>& tmp, std::size_t lo,
                                            std::size_t hi) {
  if (hi - lo < 2) {
    return 0;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = merge_count_inversions(v, tmp, lo, mid) +
                        merge_count_inversions(v, tmp, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += mid - i;
      tmp[k++] = v[j++];
    } else {
      tmp[k++] = v[i++];
    }
  }
  while (i < mid) {
    tmp[k++] = v[i++];
  }
  while (j < hi) {
    tmp[k++] = v[j++];
  }
  std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo),
            tmp.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

/// Null pmf of the inversion count of a uniform random permutation of size n.
/// Built by convolving the uniform insertion distributions; probabilities
/// rather than counts so n = 50 stays in double range.
inline std::vector<double> inversion_count_pmf(std::int64_t n) {
  std::vector<double> dist{1.0};
  for (std::int64_t i = 2; i <= n; ++i) {
    const std::size_t width = static_cast<std::size_t>(i);
    const std::size_t out_size = dist.size() + width - 1;
    std::vector<double> prefix(dist.size() + 1, 0.0);
    for (std::size_t k = 0; k < dist.size(); ++k) {
      prefix[k + 1] = prefix[k] + dist[k];
    }
    std::vector<double> next(out_size, 0.0);
    const double inv_width = 1.0 / static_cast<double>(i);
    for (std::size_t k = 0; k < out_size; ++k) {
      const std::size_t lo = k >= width - 1 ? k - (width - 1) : 0;
      const std::size_t hi = std::min(k, dist.size() - 1);
      next[k] = (prefix[hi + 1] - prefix[lo]) * inv_width;
    }
    dist.swap(next);
  }
  return dist;
}

inline double clamp_p(double p) { return std::clamp(p, 1e-300, 1.0); }

}  // namespace detail

/// Kendall rank-correlation trend test of x against its index order.
///
/// tau uses the tau-b tie convention, S / sqrt((n0 - n1) * n0) with n0 the
/// number of index pairs and n1 the number of pairs tied in x (the index
/// itself has no ties). The p-value is exact (full null distribution of S by
/// enumeration over permutations) for tie-free sequences with n <= 50, and a
/// continuity-corrected normal approximation with tie-corrected variance
/// otherwise.
inline TrendResult kendall_tau_test(std::span<const double> x,
                                    TrendAlternative alt = TrendAlternative::TwoSided) {
  const std::int64_t n = std::ssize(x);
  if (n < 3) {
    throw InsufficientDataError("kendall_tau_test: need at least 3 values");
  }
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw DataError("kendall_tau_test: values must be finite");
    }
  }

  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  std::int64_t tie_pairs = 0;      // n1 = sum t(t-1)/2
  double tie_var_term = 0.0;       // sum t(t-1)(2t+5)
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) {
      ++j;
    }
    const auto t = static_cast<std::int64_t>(j - i);
    tie_pairs += t * (t - 1) / 2;
    tie_var_term += static_cast<double>(t) * static_cast<double>(t - 1) *
                    static_cast<double>(2 * t + 5);
    i = j;
  }

  const std::int64_t n0 = n * (n - 1) / 2;
  if (tie_pairs == n0) {
    throw DegenerateResultError("kendall_tau_test: constant sequence, tau undefined");
  }

  std::vector<double> work(x.begin(), x.end());
  std::vector<double> tmp(work.size());
  const std::uint64_t inversions =
      detail::merge_count_inversions(work, tmp, 0, work.size());
  const std::int64_t s_stat = n0 - tie_pairs - 2 * static_cast<std::int64_t>(inversions);
  const double tau = static_cast<double>(s_stat) /
                     std::sqrt(static_cast<double>(n0 - tie_pairs) *
                               static_cast<double>(n0));

  double p_increasing = 1.0;
  double p_decreasing = 1.0;
  if (n <= 50 && tie_pairs == 0) {
    // Exact null tail: S = n0 - 2*D with D the inversion count.
    const std::vector<double> pmf = detail::inversion_count_pmf(n);
    const auto d = static_cast<std::size_t>(inversions);
    double cdf = 0.0;
    for (std::size_t k = 0; k <= d; ++k) {
      cdf += pmf[k];
    }
    p_increasing = cdf;                          // P(S' >= S) = P(D' <= D)
    p_decreasing = 1.0 - (cdf - pmf[d]);         // P(S' <= S) = P(D' >= D)
  } else {
    const double var_s =
        (static_cast<double>(n) * static_cast<double>(n - 1) *
             static_cast<double>(2 * n + 5) -
         tie_var_term) /
        18.0;
    const double sd_s = std::sqrt(var_s);
    const double s = static_cast<double>(s_stat);
    p_increasing = detail::normal_upper_tail((s - 1.0) / sd_s);
    p_decreasing = 1.0 - detail::normal_upper_tail((s + 1.0) / sd_s);
  }

  double p = 1.0;
  switch (alt) {
    case TrendAlternative::TwoSided:
      p = std::min(1.0, 2.0 * std::min(p_increasing, p_decreasing));
      break;
    case TrendAlternative::Increasing:
      p = p_increasing;
      break;
    case TrendAlternative::Decreasing:
      p = p_decreasing;
      break;
  }
  return {tau, detail::clamp_p(p), n};
}

/// Kendall trend test on the means of n_blocks contiguous, near-equal blocks.
/// Stands in for per-epoch binning while preserving arrival order.
inline TrendResult blocked_trend(std::span<const double> values, std::int64_t n_blocks,
                                 TrendAlternative alt = TrendAlternative::TwoSided) {
  if (n_blocks < 3) {
    throw ConfigError("blocked_trend: need at least 3 blocks");
  }
  const std::int64_t n = std::ssize(values);
  if (n < n_blocks) {
    throw InsufficientDataError("blocked_trend: fewer values than blocks");
  }
  const std::int64_t base = n / n_blocks;
  const std::int64_t remainder = n % n_blocks;
  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(n_blocks));
  std::size_t pos = 0;
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    const std::int64_t len = base + (b < remainder ? 1 : 0);
    double sum = 0.0;
    for (std::int64_t k = 0; k < len; ++k) {
      sum += values[pos++];
    }
    means.push_back(sum / static_cast<double>(len));
  }
  return kendall_tau_test(means, alt);
}

/// Prefix mean and standard error of the mean after each observation.
struct CumulativePoint {
  std::int64_t n = 0;
  double mean = 0.0;
  std::optional<double> se;  ///< absent for n < 2
};

/// Running Welford pass; recomputing any prefix from scratch with the same
/// recurrence reproduces these values bit for bit.
inline std::vector<CumulativePoint> cumulative_estimates(std::span<const double> y) {
  if (y.empty()) {
    throw InsufficientDataError("cumulative_estimates: empty sequence");
  }
  std::vector<CumulativePoint> out;
  out.reserve(y.size());
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t k = 0;
  for (double v : y) {
    if (!std::isfinite(v)) {
      throw DataError("cumulative_estimates: values must be finite");
    }
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
    CumulativePoint point{k, mean, std::nullopt};
    if (k >= 2) {
      point.se = std::sqrt(m2 / (static_cast<double>(k - 1) * static_cast<double>(k)));
    }
    out.push_back(point);
  }
  return out;
}

/// Trailing mean over a window of w values; shorter prefixes average what is
/// available.
inline std::vector<double> rolling_mean(std::span<const double> values, std::int64_t w) {
  if (w < 1) {
    throw ConfigError("rolling_mean: window must be >= 1");
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t lo = i + 1 >= static_cast<std::size_t>(w)
                               ? i + 1 - static_cast<std::size_t>(w)
                               : 0;
    double sum = 0.0;
    for (std::size_t j = lo; j <= i; ++j) {
      sum += values[j];
    }
    out.push_back(sum / static_cast<double>(i - lo + 1));
  }
  return out;
}

}  // namespace driftlab

#endif  // DRIFTLAB_DIAGNOSTICS_HPP
