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
#include "fatiguefit/stress.hpp"

namespace fatiguefit {

enum class Family {
    NormalOnLog,     // I:   log_b(N) ~ Normal(mu, tau)
    SinhNormalOnLn,  // II:  ln(N) ~ SinhNormal(alpha, mu, 2)
    BSOnLog,         // III: log_b(N) ~ BS(alpha, mu)
};

enum class ScaleModel {
    Constant,   // a
    LogLinear,  // b: base^(B1 + B2 log_b(S_eq))
};

enum class LogBase { Ten, E };

struct ModelSpec {
    Family family = Family::NormalOnLog;
    ScaleModel scale = ScaleModel::Constant;
    TransformKind transform = TransformKind::Walker;
    LogBase base = LogBase::Ten;

    bool operator==(const ModelSpec&) const = default;
};

/// "Ia", "Ib", "IIa", "IIb", "IIIa", "IIIb". Transform and base keep their
/// defaults. Throws std::invalid_argument on anything else.
ModelSpec parse_model(std::string_view name);
std::string model_name(const ModelSpec& spec);
LogBase parse_log_base(std::string_view name);
std::string_view log_base_name(LogBase base) noexcept;

double log_in_base(double x, LogBase base) noexcept;

/// Named model parameters. Fields that the spec does not use are ignored.
struct ParamVector {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double q = 0.0;
    double tau_or_alpha = 1.0;  // Constant scale
    double b1 = 0.0;            // LogLinear scale
    double b2 = 0.0;

    bool operator==(const ParamVector&) const = default;
};

/// Parameter names in canonical order: A1 A2 A3 [q] (tau|alpha) or (B1 B2).
std::vector<std::string> param_names(const ModelSpec& spec);
std::vector<double> to_values(const ParamVector& p, const ModelSpec& spec);
ParamVector from_values(std::span<const double> values, const ModelSpec& spec);
std::size_t param_count(const ModelSpec& spec) noexcept;

/// A1 + A2 log_b(s_eq - A3); nullopt when s_eq <= A3 (below the fatigue limit).
std::optional<double> location_mu(double s_eq, const ParamVector& p, LogBase base);

double scale_value(double s_eq, const ParamVector& p, const ModelSpec& spec);

/// The life variable the family models: log_b(N) for I and III, ln(N) for II.
double life_transform(double cycles, const ModelSpec& spec) noexcept;
double life_inverse(double y, const ModelSpec& spec) noexcept;

/// Distribution of the transformed life at a given equivalent stress;
/// nullopt below the fatigue limit or where the kernel is undefined
/// (BS with a nonpositive location).
std::optional<Kernel> life_kernel(double s_eq, const ParamVector& p, const ModelSpec& spec);

/// Log contribution of one record. -infinity marks an impossible record
/// (a failure below the fatigue limit). Throws DataError for a BS-family
/// record with N <= 1 cycle.
double observation_loglik(const FatigueObservation& obs, const ParamVector& p,
                          const ModelSpec& spec);

/// Compensated sum over records; nullopt when the parameters are infeasible.
std::optional<double> total_loglik(const FatigueDataset& data, const ParamVector& p,
                                   const ModelSpec& spec);

/// Checks the dataset against the spec's requirements before fitting.
void check_fit_inputs(const FatigueDataset& data, const ModelSpec& spec);

/// Precomputed evaluator for repeated likelihood calls on one dataset.
/// Records sharing a loading (S_max, R, S_eq) share the per-loading work, and
/// an optional integer weight per record expresses bootstrap resamples
/// without copying data. Summation order is fixed, so results are
/// reproducible bit for bit.
class LikelihoodEvaluator {
public:
    LikelihoodEvaluator(const FatigueDataset& data, const ModelSpec& spec);

    std::optional<double> operator()(const ParamVector& p) const;
    std::optional<double> operator()(const ParamVector& p,
                                     std::span<const double> weights) const;

    const ModelSpec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return rows_.size(); }

    struct FailurePoint {
        double s_eq;
        double y;
        double weight;
    };

    /// Failures with nonzero weight, at stress exponent q.
    std::vector<FailurePoint> failure_points(double q, std::span<const double> weights = {}) const;

    /// Smallest failure equivalent stress at exponent q (the A3 ceiling).
    double min_failure_stress(double q, std::span<const double> weights = {}) const;

private:
    struct Row {
        std::size_t loading;
        double y;
        double log_jacobian;
        double log_y_32;  // 1.5 log(y), BS family only
        bool failure;
    };
    struct Loading {
        FatigueObservation obs;
    };

    ModelSpec spec_;
    std::vector<Row> rows_;
    std::vector<Loading> loadings_;
};

}  // namespace fatiguefit
