/*
 * Copyright (c) 2026, The fatiguefit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <functional>

namespace fatiguefit {

/// Worker count: hardware concurrency, capped by FATIGUEFIT_THREADS if set.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Each index is
/// processed exactly once; the first exception thrown is rethrown after all
/// workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace fatiguefit
