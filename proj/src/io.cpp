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

#include "fatiguefit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace fatiguefit {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string family_name(Family f)
{
    switch (f) {
    case Family::NormalOnLog: return "normal";
    case Family::SinhNormalOnLn: return "sinh-normal";
    case Family::BSOnLog: return "birnbaum-saunders";
    }
    return "?";
}

}  // namespace

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json to_json(const ModelSpec& spec)
{
    return ordered_json{{"model", model_name(spec)},
                        {"family", family_name(spec.family)},
                        {"scale", spec.scale == ScaleModel::Constant ? "constant" : "log-linear"},
                        {"transform", std::string(transform_name(spec.transform))},
                        {"log_base", std::string(log_base_name(spec.base))}};
}

ModelSpec model_spec_from_json(const json& j)
{
    ModelSpec spec = parse_model(j.at("model").get<std::string>());
    spec.transform = parse_transform(j.at("transform").get<std::string>());
    spec.base = parse_log_base(j.at("log_base").get<std::string>());
    return spec;
}

ordered_json to_json(const ParamVector& p, const ModelSpec& spec)
{
    ordered_json j = ordered_json::object();
    auto names = param_names(spec);
    auto values = to_values(p, spec);
    for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = values[i];
    return j;
}

ParamVector params_from_json(const json& j, const ModelSpec& spec)
{
    std::vector<double> values;
    for (const auto& name : param_names(spec)) values.push_back(j.at(name).get<double>());
    return from_values(values, spec);
}

ordered_json to_json(const FittedModel& fit)
{
    return ordered_json{{"spec", to_json(fit.spec)},
                        {"params", to_json(fit.params, fit.spec)},
                        {"loglik", fit.loglik},
                        {"k", fit.k},
                        {"m", fit.m},
                        {"converged", fit.converged},
                        {"n_restarts_used", fit.n_restarts_used},
                        {"seed", fit.seed},
                        {"dataset_sha256", fit.dataset_hash}};
}

FittedModel fitted_model_from_json(const json& j)
{
    FittedModel f;
    f.spec = model_spec_from_json(j.at("spec"));
    f.params = params_from_json(j.at("params"), f.spec);
    f.loglik = j.at("loglik").get<double>();
    f.k = j.at("k").get<std::size_t>();
    f.m = j.at("m").get<std::size_t>();
    f.converged = j.at("converged").get<bool>();
    f.n_restarts_used = j.value("n_restarts_used", std::size_t{0});
    f.seed = j.value("seed", std::uint64_t{0});
    f.dataset_hash = j.value("dataset_sha256", std::string{});
    if (f.k != param_count(f.spec))
        throw std::invalid_argument("parameter count does not match model " + model_name(f.spec));
    return f;
}

ordered_json to_json(const FitConfig& cfg)
{
    return ordered_json{{"n_starts", cfg.n_starts},
                        {"max_iters", cfg.max_iters},
                        {"rel_tol", cfg.rel_tol},
                        {"seed", cfg.seed}};
}

ordered_json to_json(const ICReport& ic)
{
    return ordered_json{{"loglik", ic.loglik}, {"k", ic.k},     {"m", ic.m},
                        {"aic", ic.aic},       {"bic", ic.bic}, {"aicc", ic.aicc ? json(*ic.aicc) : json()}};
}

ordered_json to_json(const ProfileCurve& curve)
{
    ordered_json points = ordered_json::array();
    auto rel = curve.normalized();
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& p = curve.points[i];
        points.push_back({{"A3", p.a3},
                          {"loglik", p.loglik ? json(*p.loglik) : json()},
                          {"relative", rel[i]},
                          {"feasible", p.loglik.has_value()}});
    }
    ordered_json j{{"mle", to_json(curve.mle)},
                   {"max_loglik", curve.max_loglik},
                   {"cut", kProfileCut95},
                   {"points", points}};
    if (auto iv = curve.interval_above())
        j["interval"] = {iv->lo, iv->hi};
    else
        j["interval"] = nullptr;
    return j;
}

ordered_json to_json(const BootstrapSummary& s)
{
    ordered_json iv = ordered_json::array();
    for (const auto& p : s.intervals)
        iv.push_back({{"param", p.name}, {"estimate", p.estimate}, {"lo", p.lo}, {"hi", p.hi}});
    return ordered_json{{"reps", s.reps},         {"failed_refits", s.failed_refits},
                        {"level", s.level},       {"seed", s.seed},
                        {"stratified", s.stratified}, {"intervals", iv}};
}

void write_profile_csv(std::ostream& out, const ProfileCurve& curve)
{
    auto rel = curve.normalized();
    out << "A3,loglik,relative,feasible\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& p = curve.points[i];
        out << format_number(p.a3) << ',' << (p.loglik ? format_number(*p.loglik) : "") << ','
            << format_number(rel[i]) << ',' << (p.loglik ? 1 : 0) << '\n';
    }
}

void write_bootstrap_csv(std::ostream& out, const BootstrapSummary& s)
{
    out << "param,estimate,lo,hi\n";
    for (const auto& p : s.intervals)
        out << p.name << ',' << format_number(p.estimate) << ',' << format_number(p.lo) << ','
            << format_number(p.hi) << '\n';
}

void write_quantile_csv(std::ostream& out, const QuantileCurve& p05, const QuantileCurve& p50,
                        const QuantileCurve& p95)
{
    if (p05.points.size() != p50.points.size() || p50.points.size() != p95.points.size())
        throw std::invalid_argument("quantile curves must share a stress grid");
    out << "s_eq,cycles_p05,cycles_p50,cycles_p95,infinite_life\n";
    for (std::size_t i = 0; i < p50.points.size(); ++i) {
        const auto& m = p50.points[i];
        out << format_number(m.s_eq) << ',' << format_number(p05.points[i].cycles) << ','
            << format_number(m.cycles) << ',' << format_number(p95.points[i].cycles) << ','
            << (m.infinite_life ? 1 : 0) << '\n';
    }
}

void write_survival_csv(std::ostream& out, const SurvivalCurve& curve)
{
    out << "cycles,survival\n";
    for (const auto& [n, s] : curve.points) out << format_number(n) << ',' << format_number(s) << '\n';
}

void write_probability_plot_csv(std::ostream& out, const ProbabilityPlot& plot)
{
    out << "position,empirical,fitted\n";
    for (const auto& p : plot.points)
        out << format_number(p.position) << ',' << format_number(p.empirical) << ','
            << format_number(p.fitted) << '\n';
}

std::vector<RankedModel> rank_by_aic(std::vector<RankedModel> models)
{
    std::stable_sort(models.begin(), models.end(), [](const RankedModel& a, const RankedModel& b) {
        if (std::fabs(a.ic.aic - b.ic.aic) > 1e-9) return a.ic.aic < b.ic.aic;
        return a.ic.k < b.ic.k;
    });
    return models;
}

void write_ranking_csv(std::ostream& out, const std::vector<RankedModel>& ranking)
{
    out << "rank,model,loglik,k,m,aic,bic,aicc\n";
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        const auto& r = ranking[i];
        out << i + 1 << ',' << r.label << ',' << format_number(r.ic.loglik) << ',' << r.ic.k << ','
            << r.ic.m << ',' << format_number(r.ic.aic) << ',' << format_number(r.ic.bic) << ','
            << (r.ic.aicc ? format_number(*r.ic.aicc) : "") << '\n';
    }
}

}  // namespace fatiguefit
