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

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "fatiguefit/dataset.hpp"
#include "fatiguefit/likelihood.hpp"

namespace fatiguefit {

/// No start point had a finite likelihood.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Interval {
    double lo;
    double hi;
};

/// Box constraints. A3 is additionally bounded above by the smallest failure
/// equivalent stress, which the likelihood enforces by rejection.
struct ParamBounds {
    Interval a1{-100.0, 100.0};
    Interval a2{-100.0, 100.0};
    double a3_min = 0.0;
    Interval q{-2.0, 2.0};
    Interval b1{-50.0, 50.0};
    Interval b2{-20.0, 20.0};

    bool contains(const ParamVector& p, const ModelSpec& spec) const noexcept;
};

struct FitConfig {
    std::size_t n_starts = 24;
    std::size_t max_iters = 5000;
    double rel_tol = 1e-12;
    std::uint64_t seed = 0;
    ParamBounds bounds;

    /// Used as start 0 instead of the least-squares heuristic.
    std::optional<ParamVector> warm_start;
    /// Holds A3 at this value (profile likelihood).
    std::optional<double> fixed_a3;
};

struct FittedModel {
    ModelSpec spec;
    ParamVector params;
    double loglik = 0.0;
    std::size_t k = 0;
    std::size_t m = 0;
    bool converged = false;
    std::size_t n_restarts_used = 0;
    std::uint64_t seed = 0;
    /// Content hash of the dataset, filled in by callers that know it.
    std::string dataset_hash;
};

/// Maximizes the censored log-likelihood over the model parameters using
/// multi-start simplex search. Throws FitError if no start is feasible.
FittedModel fit(const FatigueDataset& data, const ModelSpec& spec, const FitConfig& cfg = {});

/// Same, over a prepared evaluator with per-record weights (empty = all 1).
/// `m` is the effective observation count reported in the result.
FittedModel fit(const LikelihoodEvaluator& eval, std::span<const double> weights,
                const FitConfig& cfg, std::size_t m);

/// Starting values from least squares of the life variable on
/// log(S_eq - a3) over failures, at the given q and fatigue limit.
ParamVector heuristic_start(const FatigueDataset& data, const ModelSpec& spec, double q,
                            double a3);

}  // namespace fatiguefit
