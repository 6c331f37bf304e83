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

#include "fatiguefit/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "fatiguefit/summation.hpp"

namespace fatiguefit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

}  // namespace

ModelSpec parse_model(std::string_view name)
{
    ModelSpec spec;
    if (name.empty()) throw std::invalid_argument("empty model name");
    char variant = name.back();
    auto roman = name.substr(0, name.size() - 1);
    if (variant == 'a')
        spec.scale = ScaleModel::Constant;
    else if (variant == 'b')
        spec.scale = ScaleModel::LogLinear;
    else
        roman = {};
    if (roman == "I")
        spec.family = Family::NormalOnLog;
    else if (roman == "II")
        spec.family = Family::SinhNormalOnLn;
    else if (roman == "III")
        spec.family = Family::BSOnLog;
    else
        throw std::invalid_argument("unknown model '" + std::string(name) +
                                    "' (expected Ia, Ib, IIa, IIb, IIIa or IIIb)");
    return spec;
}

std::string model_name(const ModelSpec& spec)
{
    std::string s;
    switch (spec.family) {
    case Family::NormalOnLog: s = "I"; break;
    case Family::SinhNormalOnLn: s = "II"; break;
    case Family::BSOnLog: s = "III"; break;
    }
    return s + (spec.scale == ScaleModel::Constant ? "a" : "b");
}

LogBase parse_log_base(std::string_view name)
{
    if (name == "10") return LogBase::Ten;
    if (name == "e") return LogBase::E;
    throw std::invalid_argument("log base must be 10 or e, got '" + std::string(name) + "'");
}

std::string_view log_base_name(LogBase base) noexcept { return base == LogBase::Ten ? "10" : "e"; }

double log_in_base(double x, LogBase base) noexcept
{
    return base == LogBase::Ten ? std::log10(x) : std::log(x);
}

std::vector<std::string> param_names(const ModelSpec& spec)
{
    std::vector<std::string> names{"A1", "A2", "A3"};
    if (has_exponent(spec.transform)) names.emplace_back("q");
    if (spec.scale == ScaleModel::Constant) {
        names.emplace_back(spec.family == Family::NormalOnLog ? "tau" : "alpha");
    } else {
        names.emplace_back("B1");
        names.emplace_back("B2");
    }
    return names;
}

std::size_t param_count(const ModelSpec& spec) noexcept
{
    return 3 + (has_exponent(spec.transform) ? 1 : 0) +
           (spec.scale == ScaleModel::Constant ? 1 : 2);
}

std::vector<double> to_values(const ParamVector& p, const ModelSpec& spec)
{
    std::vector<double> v{p.a1, p.a2, p.a3};
    if (has_exponent(spec.transform)) v.push_back(p.q);
    if (spec.scale == ScaleModel::Constant) {
        v.push_back(p.tau_or_alpha);
    } else {
        v.push_back(p.b1);
        v.push_back(p.b2);
    }
    return v;
}

ParamVector from_values(std::span<const double> values, const ModelSpec& spec)
{
    if (values.size() != param_count(spec))
        throw std::invalid_argument("expected " + std::to_string(param_count(spec)) +
                                    " parameters for model " + model_name(spec));
    ParamVector p;
    std::size_t i = 0;
    p.a1 = values[i++];
    p.a2 = values[i++];
    p.a3 = values[i++];
    if (has_exponent(spec.transform)) p.q = values[i++];
    if (spec.scale == ScaleModel::Constant) {
        p.tau_or_alpha = values[i++];
    } else {
        p.b1 = values[i++];
        p.b2 = values[i++];
    }
    return p;
}

std::optional<double> location_mu(double s_eq, const ParamVector& p, LogBase base)
{
    if (!(s_eq > p.a3)) return std::nullopt;
    return p.a1 + p.a2 * log_in_base(s_eq - p.a3, base);
}

double scale_value(double s_eq, const ParamVector& p, const ModelSpec& spec)
{
    if (spec.scale == ScaleModel::Constant) return p.tau_or_alpha;
    double e = p.b1 + p.b2 * log_in_base(s_eq, spec.base);
    return spec.base == LogBase::Ten ? std::pow(10.0, e) : std::exp(e);
}

double life_transform(double cycles, const ModelSpec& spec) noexcept
{
    if (spec.family == Family::SinhNormalOnLn) return std::log(cycles);
    return log_in_base(cycles, spec.base);
}

double life_inverse(double y, const ModelSpec& spec) noexcept
{
    if (spec.family == Family::SinhNormalOnLn || spec.base == LogBase::E) return std::exp(y);
    return std::pow(10.0, y);
}

namespace {

// log of d(life_transform)/dN.
double log_jacobian(double cycles, const ModelSpec& spec) noexcept
{
    double j = -std::log(cycles);
    if (spec.family != Family::SinhNormalOnLn && spec.base == LogBase::Ten)
        j -= std::log(std::numbers::ln10);
    return j;
}

}  // namespace

std::optional<Kernel> life_kernel(double s_eq, const ParamVector& p, const ModelSpec& spec)
{
    auto mu = location_mu(s_eq, p, spec.base);
    if (!mu) return std::nullopt;
    double scale = scale_value(s_eq, p, spec);
    if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(*mu)) return std::nullopt;
    switch (spec.family) {
    case Family::NormalOnLog: return NormalKernel{*mu, scale};
    case Family::SinhNormalOnLn: return SinhNormalKernel{scale, *mu};
    case Family::BSOnLog:
        if (!(*mu > 0.0)) return std::nullopt;
        return BirnbaumSaundersKernel{scale, *mu};
    }
    return std::nullopt;
}

double observation_loglik(const FatigueObservation& obs, const ParamVector& p,
                          const ModelSpec& spec)
{
    double y = life_transform(obs.cycles, spec);
    if (spec.family == Family::BSOnLog && !(y > 0.0))
        throw DataError("Birnbaum-Saunders models need more than one cycle to failure");

    StressTransform t{spec.transform, p.q};
    double s = equivalent_stress(obs, t);
    if (!(s > p.a3)) return obs.is_runout ? 0.0 : kNegInf;

    auto kernel = life_kernel(s, p, spec);
    if (!kernel) return kNegInf;
    if (obs.is_runout) return log_survival(y, *kernel);
    return logpdf(y, *kernel) + log_jacobian(obs.cycles, spec);
}

std::optional<double> total_loglik(const FatigueDataset& data, const ParamVector& p,
                                   const ModelSpec& spec)
{
    NeumaierSum sum;
    for (const auto& obs : data.observations) {
        double term = observation_loglik(obs, p, spec);
        if (!std::isfinite(term)) return std::nullopt;
        sum += term;
    }
    return sum.value();
}

void check_fit_inputs(const FatigueDataset& data, const ModelSpec& spec)
{
    data.validate();
    check_transform_inputs(data, spec.transform);
    if (spec.family == Family::BSOnLog) {
        for (std::size_t i = 0; i < data.size(); ++i)
            if (!(life_transform(data.observations[i].cycles, spec) > 0.0))
                throw DataError("Birnbaum-Saunders models need more than one cycle", i + 1);
    }
}

LikelihoodEvaluator::LikelihoodEvaluator(const FatigueDataset& data, const ModelSpec& spec)
    : spec_(spec)
{
    check_fit_inputs(data, spec);
    using Key = std::tuple<double, double, bool, double, bool>;
    std::map<Key, std::size_t> index;
    rows_.reserve(data.size());
    for (const auto& o : data.observations) {
        Key key{o.s_max, o.stress_ratio.value_or(0.0), o.stress_ratio.has_value(),
                o.s_eq_direct.value_or(0.0), o.s_eq_direct.has_value()};
        auto [it, inserted] = index.try_emplace(key, loadings_.size());
        if (inserted) {
            FatigueObservation proto = o;
            proto.group.reset();
            loadings_.push_back({proto});
        }
        double y = life_transform(o.cycles, spec);
        rows_.push_back({it->second, y, log_jacobian(o.cycles, spec),
                         spec.family == Family::BSOnLog ? 1.5 * std::log(y) : 0.0,
                         o.is_failure()});
    }
}

std::vector<LikelihoodEvaluator::FailurePoint>
LikelihoodEvaluator::failure_points(double q, std::span<const double> weights) const
{
    StressTransform t{spec_.transform, q};
    std::vector<double> s_eq(loadings_.size());
    for (std::size_t l = 0; l < loadings_.size(); ++l)
        s_eq[l] = equivalent_stress(loadings_[l].obs, t);
    std::vector<FailurePoint> pts;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        double w = weights.empty() ? 1.0 : weights[i];
        if (rows_[i].failure && w > 0.0) pts.push_back({s_eq[rows_[i].loading], rows_[i].y, w});
    }
    return pts;
}

double LikelihoodEvaluator::min_failure_stress(double q, std::span<const double> weights) const
{
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& pt : failure_points(q, weights)) lo = std::min(lo, pt.s_eq);
    return lo;
}

std::optional<double> LikelihoodEvaluator::operator()(const ParamVector& p) const
{
    return (*this)(p, {});
}

std::optional<double> LikelihoodEvaluator::operator()(const ParamVector& p,
                                                      std::span<const double> weights) const
{
    struct State {
        bool active;  // above the fatigue limit
        bool valid;
        double mu;
        double scale;
        double log_norm;  // family-specific constant part of the log-density
    };
    StressTransform t{spec_.transform, p.q};
    std::vector<State> state(loadings_.size());
    for (std::size_t l = 0; l < loadings_.size(); ++l) {
        double s = equivalent_stress(loadings_[l].obs, t);
        State& st = state[l];
        st.active = s > p.a3;
        if (!st.active) continue;
        st.mu = p.a1 + p.a2 * log_in_base(s - p.a3, spec_.base);
        st.scale = scale_value(s, p, spec_);
        st.valid = std::isfinite(st.mu) && st.scale > 0.0 && std::isfinite(st.scale) &&
                   (spec_.family != Family::BSOnLog || st.mu > 0.0);
        if (!st.valid) continue;
        switch (spec_.family) {
        case Family::NormalOnLog: st.log_norm = -kLogSqrt2Pi - std::log(st.scale); break;
        case Family::SinhNormalOnLn: st.log_norm = -kLogSqrt2Pi - std::log(st.scale); break;
        case Family::BSOnLog:
            st.log_norm = -kLogSqrt2Pi - std::log(2.0 * st.scale) - 0.5 * std::log(st.mu);
            break;
        }
    }

    NeumaierSum sum;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        double w = weights.empty() ? 1.0 : weights[i];
        if (w == 0.0) continue;
        const Row& r = rows_[i];
        const State& st = state[r.loading];
        if (!st.active) {
            if (r.failure) return std::nullopt;
            continue;
        }
        if (!st.valid) return std::nullopt;

        double term = 0.0;
        switch (spec_.family) {
        case Family::NormalOnLog: {
            double z = (r.y - st.mu) / st.scale;
            term = r.failure ? st.log_norm - 0.5 * z * z + r.log_jacobian : std_normal_log_sf(z);
            break;
        }
        case Family::SinhNormalOnLn: {
            double half = 0.5 * (r.y - st.mu);
            double sh = std::sinh(half);
            if (r.failure) {
                double ax = std::fabs(half);
                double log_cosh = ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
                term = st.log_norm + log_cosh - 2.0 / (st.scale * st.scale) * sh * sh +
                       r.log_jacobian;
            } else {
                term = std_normal_log_sf(2.0 / st.scale * sh);
            }
            break;
        }
        case Family::BSOnLog: {
            double a = st.scale;
            if (r.failure) {
                term = st.log_norm + std::log(r.y + st.mu) - r.log_y_32 -
                       (r.y / st.mu + st.mu / r.y - 2.0) / (2.0 * a * a) + r.log_jacobian;
            } else {
                term = std_normal_log_sf((std::sqrt(r.y / st.mu) - std::sqrt(st.mu / r.y)) / a);
            }
            break;
        }
        }
        if (!std::isfinite(term)) return std::nullopt;
        sum += w * term;
    }
    return sum.value();
}

}  // namespace fatiguefit
