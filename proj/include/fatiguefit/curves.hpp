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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fatiguefit/dataset.hpp"
#include "fatiguefit/distributions.hpp"
#include "fatiguefit/mle.hpp"

namespace fatiguefit {

struct QuantilePoint {
    double s_eq;
    /// Life quantile in cycles. Meaningless when infinite_life is set; NaN
    /// where the model is undefined (BS location <= 0).
    double cycles;
    bool infinite_life;
};

struct QuantileCurve {
    double p = 0.5;
    std::string model;
    std::vector<QuantilePoint> points;
};

/// Life quantile at each equivalent stress. Grid values at or below A3 are
/// flagged as infinite life.
QuantileCurve quantile_curve(const FittedModel& fit, double p, const std::vector<double>& s_grid);

struct SurvivalCurve {
    double s_max = 0.0;
    std::optional<double> stress_ratio;
    double s_eq = 0.0;
    std::vector<std::pair<double, double>> points;  // (cycles, survival)
};

/// Survival probability of a specimen loaded at (s_max, R) for each cycle
/// count. Constant 1 below the fatigue limit.
SurvivalCurve survival_curve(const FittedModel& fit, double s_max,
                             std::optional<double> stress_ratio,
                             const std::vector<double>& cycle_grid);

/// Survival at one cycle count for a given equivalent stress.
double survival_at(const FittedModel& fit, double s_eq, double cycles);

enum class PlotFamily { Normal, BirnbaumSaunders };
enum class LifeScale { Cycles, Log, Log10 };

PlotFamily parse_plot_family(std::string_view name);
LifeScale parse_life_scale(std::string_view name);
std::string_view plot_family_name(PlotFamily f) noexcept;
std::string_view life_scale_name(LifeScale s) noexcept;

struct ProbabilityPlotPoint {
    double position;
    double empirical;  // sorted transformed failure life
    double fitted;     // fitted-distribution quantile at the position
};

struct ProbabilityPlot {
    PlotFamily family = PlotFamily::Normal;
    LifeScale scale = LifeScale::Log;
    Kernel fitted_kernel;
    std::vector<ProbabilityPlotPoint> points;
    /// Pearson correlation of (empirical, fitted); closer to 1 is straighter.
    double correlation = 0.0;
};

/// Blom-style positions (i - 0.375) / (n + 0.25), i = 1..n.
std::vector<double> plotting_positions(std::size_t n);

/// Probability plot of the failure lives against a single-population fit
/// (maximum likelihood, run-outs entering as survival terms). Throws
/// DataError with fewer than three failures.
ProbabilityPlot probability_plot(const FatigueDataset& data, PlotFamily family, LifeScale scale);

}  // namespace fatiguefit
