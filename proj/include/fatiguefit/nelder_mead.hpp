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
#include <span>
#include <vector>

namespace fatiguefit {

struct NelderMeadOptions {
    std::size_t max_iters = 5000;
    /// Stop once the spread of objective values across the simplex falls
    /// below rel_tol * (1 + |f_best|).
    double rel_tol = 1e-9;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Minimizes `f` with the adaptive-parameter simplex method (coefficients
/// scaled with the dimension). Non-finite objective values are treated as
/// rejected points. `steps` gives the initial edge length per coordinate; a
/// vertex that lands on a rejected point is pulled back toward `x0`.
/// The returned value is never worse than f(x0).
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, std::span<const double> steps,
                             const NelderMeadOptions& opts = {});

}  // namespace fatiguefit
