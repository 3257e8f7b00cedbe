// Copyright 2026 The kpmdos Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Process-wide thread cap and a blocking parallel loop. Results must be
 * written to per-index slots so reductions stay ordered and deterministic.
 */

#pragma once

#include <cstddef>
#include <functional>

namespace kpmdos {

/// 0 restores the default (hardware concurrency).
void set_max_threads(std::size_t n);
std::size_t max_threads();

/// Calls body(i) for i in [0, n). Rethrows the first exception after all
/// workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

} // namespace kpmdos
