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

#ifndef DRIFTLAB_DRIFTLAB_HPP
#define DRIFTLAB_DRIFTLAB_HPP

#include "driftlab/audit.hpp"
#include "driftlab/csv.hpp"
#include "driftlab/diagnostics.hpp"
#include "driftlab/drift.hpp"
#include "driftlab/errors.hpp"
#include "driftlab/estimators.hpp"
#include "driftlab/format.hpp"
#include "driftlab/json_io.hpp"
#include "driftlab/presets.hpp"
#include "driftlab/rng.hpp"
#include "driftlab/svg.hpp"
#include "driftlab/trace.hpp"
#include "driftlab/version.hpp"

#endif  // DRIFTLAB_DRIFTLAB_HPP
