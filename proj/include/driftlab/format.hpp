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

#ifndef DRIFTLAB_FORMAT_HPP
#define DRIFTLAB_FORMAT_HPP

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>

namespace driftlab {

/// Shortest decimal representation that round-trips the exact double.
/// Locale-independent; '.' decimal separator.
inline std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

/// Fixed-precision rendering, used for SVG geometry.
inline std::string format_double_fixed(double value, int precision) {
  char buf[64];
  auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

inline std::string format_int(std::int64_t value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace driftlab

#endif  // DRIFTLAB_FORMAT_HPP
