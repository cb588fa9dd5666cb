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

#ifndef DRIFTLAB_ERRORS_HPP
#define DRIFTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace driftlab {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid scenario, drift, policy, or figure parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or non-finite input data (NaN/Inf observations, bad CSV cells).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Too few observations for the requested statistic or audit.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// The statistic is undefined on this input (e.g. a constant sequence).
class DegenerateResultError : public Error {
 public:
  using Error::Error;
};

/// An estimator was queried before absorbing any observation.
class NotReadyError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failures: unreadable input, unwritable output.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace driftlab

#endif  // DRIFTLAB_ERRORS_HPP
