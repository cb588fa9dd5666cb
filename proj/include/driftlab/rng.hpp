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

#ifndef DRIFTLAB_RNG_HPP
#define DRIFTLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace driftlab {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer (Steele, Lea & Flood / Vigna).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

/// A deterministic pseudo-random substream derived from a 64-bit seed.
///
/// The generator is fully specified so that traces can be replayed on any
/// platform and in any language:
///
///   state_0        = mix64(seed ^ (stream_id + 1) * kGoldenGamma)
///   state_{k+1}    = state_k + kGoldenGamma
///   output_k       = mix64(state_{k+1})            (k-th call to next_u64)
///
/// i.e. each substream is a SplitMix64 sequence whose initial state is a
/// hash of (seed, stream_id). Substream 0 carries observation noise,
/// substream 1 carries drift innovations; the two never share draws, so the
/// noise realization of a scenario is identical across drift kinds.
///
/// Standard normals use the trigonometric Box-Muller transform and consume
/// exactly two 64-bit draws each (the sine branch is discarded):
///
///   u1 = ((a >> 11) + 1) * 2^-53        in (0, 1]
///   u2 = (b >> 11) * 2^-53              in [0, 1)
///   z  = sqrt(-2 ln u1) * cos(2 pi u2)
class Substream {
 public:
  /// Stream ids used by the stream generator.
  static constexpr std::uint64_t kNoiseStream = 0;
  static constexpr std::uint64_t kDriftStream = 1;

  Substream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : state_(mix64(seed ^ (stream_id + 1) * kGoldenGamma)) {}

  std::uint64_t next_u64() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Uniform in (0, 1].
  double next_open_closed() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform in [0, 1).
  double next_closed_open() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal draw; consumes exactly two 64-bit outputs.
  double next_normal() noexcept {
    const double u1 = next_open_closed();
    const double u2 = next_closed_open();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace driftlab

#endif  // DRIFTLAB_RNG_HPP
