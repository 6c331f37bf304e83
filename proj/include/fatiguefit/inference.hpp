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
#include <random>
#include <string>
#include <vector>

#include "fatiguefit/dataset.hpp"
#include "fatiguefit/mle.hpp"

namespace fatiguefit {

struct ICReport {
    double loglik = 0.0;
    std::size_t k = 0;
    std::size_t m = 0;
    double aic = 0.0;
    double bic = 0.0;
    /// Undefined when m <= k + 1.
    std::optional<double> aicc;
};

ICReport information_criteria(double loglik, std::size_t k, std::size_t m);
ICReport information_criteria(const FittedModel& fit);

/// Relative likelihood exp(-chi2_{1,0.95} / 2), the usual cut for an
/// approximate 95% profile interval.
inline constexpr double kProfileCut95 = 0.1465;

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;

    /// Parses "lo:hi:count".
    static GridSpec parse(const std::string& text);
    std::vector<double> values() const;
};

struct ProfilePoint {
    double a3;
    std::optional<double> loglik;  // nullopt when no feasible parameters exist
    std::optional<ParamVector> params;
};

struct ProfileCurve {
    FittedModel mle;
    std::vector<ProfilePoint> points;
    double max_loglik = 0.0;  // larger of the MLE and the best grid value

    /// exp(loglik - max_loglik) per point; 0 for infeasible points.
    std::vector<double> normalized() const;

    /// Grid span where the relative likelihood is >= cut, linearly
    /// interpolated at the crossings. nullopt if no point reaches the cut.
    std::optional<Interval> interval_above(double cut = kProfileCut95) const;
};

/// Profile log-likelihood of the fatigue limit. Each grid value is a
/// re-maximization with A3 held fixed, warm-started from its neighbour and
/// swept outward from the grid point nearest the MLE.
ProfileCurve profile_fatigue_limit(const FatigueDataset& data, const ModelSpec& spec,
                                   const FitConfig& cfg, const GridSpec& grid);

/// Same, reusing an existing fit of `data`.
ProfileCurve profile_fatigue_limit(const FatigueDataset& data, const FittedModel& mle,
                                   const FitConfig& cfg, const std::vector<double>& grid);

/// Row indices of one stratified resample: within each stratum, draws the
/// stratum's size with replacement. Strata are the group labels (rows
/// without a label form their own stratum); pass stratify=false to treat
/// the dataset as one stratum.
std::vector<std::size_t> stratified_resample(const FatigueDataset& data, bool stratify,
                                             std::mt19937_64& rng);

/// Independent generator for replicate `index` under `seed`.
std::mt19937_64 replicate_rng(std::uint64_t seed, std::uint64_t index);

struct ParamInterval {
    std::string name;
    double estimate;
    double lo;
    double hi;
};

struct BootstrapSummary {
    std::size_t reps = 0;
    std::size_t failed_refits = 0;
    double level = 0.9;
    std::uint64_t seed = 0;
    bool stratified = true;
    std::vector<ParamInterval> intervals;
    /// One row per successful replicate, parameters in param_names() order.
    std::vector<std::vector<double>> replicates;
};

struct BootstrapOptions {
    std::size_t reps = 2000;
    double level = 0.90;
    bool stratify = true;
    /// Starts per refit; each refit is warm-started from the original MLE.
    std::size_t refit_starts = 1;
};

/// Percentile bootstrap intervals from stratified resamples. Throws
/// std::invalid_argument for reps < 100 or level outside (0, 1).
BootstrapSummary bootstrap_ci(const FatigueDataset& data, const FittedModel& mle,
                              const FitConfig& cfg, const BootstrapOptions& opts);
BootstrapSummary bootstrap_ci(const FatigueDataset& data, const ModelSpec& spec,
                              const FitConfig& cfg, const BootstrapOptions& opts);

/// Type-7 (linear interpolation) sample quantile of sorted data.
double sorted_quantile(const std::vector<double>& sorted, double p);

}  // namespace fatiguefit
