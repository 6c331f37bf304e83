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

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "fatiguefit/curves.hpp"
#include "fatiguefit/inference.hpp"
#include "fatiguefit/mle.hpp"

namespace fatiguefit {

nlohmann::ordered_json to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const ParamVector& p, const ModelSpec& spec);
ParamVector params_from_json(const nlohmann::json& j, const ModelSpec& spec);

/// {"spec", "params", "loglik", "k", "m", "converged", "n_restarts_used",
///  "seed", "dataset_sha256"}
nlohmann::ordered_json to_json(const FittedModel& fit);
FittedModel fitted_model_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const FitConfig& cfg);
nlohmann::ordered_json to_json(const ICReport& ic);
nlohmann::ordered_json to_json(const ProfileCurve& curve);
nlohmann::ordered_json to_json(const BootstrapSummary& s);

// CSV emitters. Numbers are written with 17 significant digits so repeated
// runs produce identical bytes.
void write_profile_csv(std::ostream& out, const ProfileCurve& curve);
void write_bootstrap_csv(std::ostream& out, const BootstrapSummary& s);
/// Columns: s_eq, cycles_p05, cycles_p50, cycles_p95, infinite_life.
void write_quantile_csv(std::ostream& out, const QuantileCurve& p05, const QuantileCurve& p50,
                        const QuantileCurve& p95);
void write_survival_csv(std::ostream& out, const SurvivalCurve& curve);
void write_probability_plot_csv(std::ostream& out, const ProbabilityPlot& plot);

struct RankedModel {
    std::string label;
    ICReport ic;
};

/// Sorted by AIC, ties (to 1e-9) broken by fewer parameters.
std::vector<RankedModel> rank_by_aic(std::vector<RankedModel> models);
void write_ranking_csv(std::ostream& out, const std::vector<RankedModel>& ranking);

std::string format_number(double v);

}  // namespace fatiguefit
