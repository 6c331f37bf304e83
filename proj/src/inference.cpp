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

#include "fatiguefit/inference.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fatiguefit/parallel.hpp"

namespace fatiguefit {

ICReport information_criteria(double loglik, std::size_t k, std::size_t m)
{
    ICReport r;
    r.loglik = loglik;
    r.k = k;
    r.m = m;
    const double kd = static_cast<double>(k);
    r.aic = 2.0 * kd - 2.0 * loglik;
    r.bic = (m > 0 ? kd * std::log(static_cast<double>(m)) : 0.0) - 2.0 * loglik;
    if (m > k + 1) r.aicc = r.aic + 2.0 * kd * (kd + 1.0) / static_cast<double>(m - k - 1);
    return r;
}

ICReport information_criteria(const FittedModel& fit)
{
    return information_criteria(fit.loglik, fit.k, fit.m);
}

GridSpec GridSpec::parse(const std::string& text)
{
    auto c1 = text.find(':');
    auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("grid must look like lo:hi:count");
    GridSpec g;
    try {
        std::size_t used = 0;
        g.lo = std::stod(text.substr(0, c1));
        g.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        auto count = std::stol(text.substr(c2 + 1), &used);
        if (count < 1 || used != text.size() - c2 - 1) throw std::invalid_argument("count");
        g.count = static_cast<std::size_t>(count);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid must look like lo:hi:count, got '" + text + "'");
    }
    if (!(g.hi >= g.lo)) throw std::invalid_argument("grid upper bound is below the lower bound");
    return g;
}

std::vector<double> GridSpec::values() const
{
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
}

std::vector<double> ProfileCurve::normalized() const
{
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.loglik ? std::exp(*p.loglik - max_loglik) : 0.0);
    return out;
}

std::optional<Interval> ProfileCurve::interval_above(double cut) const
{
    auto rel = normalized();
    std::optional<std::size_t> first, last;
    for (std::size_t i = 0; i < rel.size(); ++i) {
        if (rel[i] >= cut) {
            if (!first) first = i;
            last = i;
        }
    }
    if (!first) return std::nullopt;
    auto cross = [&](std::size_t inside, std::size_t outside) {
        double a = rel[outside], b = rel[inside];
        double t = (cut - a) / (b - a);
        return points[outside].a3 + t * (points[inside].a3 - points[outside].a3);
    };
    Interval iv{points[*first].a3, points[*last].a3};
    if (*first > 0) iv.lo = cross(*first, *first - 1);
    if (*last + 1 < rel.size()) iv.hi = cross(*last, *last + 1);
    return iv;
}

ProfileCurve profile_fatigue_limit(const FatigueDataset& data, const ModelSpec& spec,
                                   const FitConfig& cfg, const GridSpec& grid)
{
    return profile_fatigue_limit(data, fit(data, spec, cfg), cfg, grid.values());
}

ProfileCurve profile_fatigue_limit(const FatigueDataset& data, const FittedModel& mle,
                                   const FitConfig& cfg, const std::vector<double>& grid)
{
    LikelihoodEvaluator eval(data, mle.spec);
    ProfileCurve curve;
    curve.mle = mle;
    curve.points.resize(grid.size());
    if (grid.empty()) {
        curve.max_loglik = mle.loglik;
        return curve;
    }

    std::size_t centre = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::fabs(grid[i] - mle.params.a3) < std::fabs(grid[centre] - mle.params.a3)) centre = i;

    auto solve = [&](std::size_t i, const ParamVector& warm) -> std::optional<ParamVector> {
        FitConfig c = cfg;
        c.fixed_a3 = grid[i];
        c.warm_start = warm;
        c.n_starts = 1;
        curve.points[i].a3 = grid[i];
        try {
            auto f = fit(eval, {}, c, data.size());
            curve.points[i].loglik = f.loglik;
            curve.points[i].params = f.params;
            return f.params;
        } catch (const FitError&) {
        }
        // Neighbour was no help; try a full multi-start at this value.
        c.warm_start.reset();
        c.n_starts = std::max<std::size_t>(cfg.n_starts, 2);
        try {
            auto f = fit(eval, {}, c, data.size());
            curve.points[i].loglik = f.loglik;
            curve.points[i].params = f.params;
            return f.params;
        } catch (const FitError&) {
            return std::nullopt;
        }
    };

    // Sweep outward from the MLE in both directions.
    ParamVector warm = mle.params;
    for (std::size_t i = centre; i < grid.size(); ++i)
        if (auto p = solve(i, warm)) warm = *p;
    warm = mle.params;
    for (std::size_t i = centre; i-- > 0;)
        if (auto p = solve(i, warm)) warm = *p;

    curve.max_loglik = mle.loglik;
    for (const auto& p : curve.points)
        if (p.loglik) curve.max_loglik = std::max(curve.max_loglik, *p.loglik);
    return curve;
}

std::mt19937_64 replicate_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

std::vector<std::size_t> stratified_resample(const FatigueDataset& data, bool stratify,
                                             std::mt19937_64& rng)
{
    std::map<std::string, std::vector<std::size_t>> strata;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& g = data.observations[i].group;
        strata[stratify && g ? *g : std::string{}].push_back(i);
    }
    std::vector<std::size_t> out;
    out.reserve(data.size());
    for (const auto& [key, rows] : strata) {
        std::uniform_int_distribution<std::size_t> pick(0, rows.size() - 1);
        for (std::size_t j = 0; j < rows.size(); ++j) out.push_back(rows[pick(rng)]);
    }
    return out;
}

double sorted_quantile(const std::vector<double>& sorted, double p)
{
    if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
    double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    auto lo = static_cast<std::size_t>(std::floor(h));
    auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BootstrapSummary bootstrap_ci(const FatigueDataset& data, const ModelSpec& spec,
                              const FitConfig& cfg, const BootstrapOptions& opts)
{
    return bootstrap_ci(data, fit(data, spec, cfg), cfg, opts);
}

BootstrapSummary bootstrap_ci(const FatigueDataset& data, const FittedModel& mle,
                              const FitConfig& cfg, const BootstrapOptions& opts)
{
    if (opts.reps < 100) throw std::invalid_argument("bootstrap needs at least 100 replicates");
    if (!(opts.level > 0.0 && opts.level < 1.0))
        throw std::invalid_argument("confidence level must lie in (0, 1)");

    LikelihoodEvaluator eval(data, mle.spec);
    const auto names = param_names(mle.spec);

    std::vector<std::optional<std::vector<double>>> draws(opts.reps);
    parallel_for(opts.reps, [&](std::size_t r) {
        auto rng = replicate_rng(cfg.seed, r);
        auto rows = stratified_resample(data, opts.stratify, rng);
        std::vector<double> weights(data.size(), 0.0);
        for (auto i : rows) weights[i] += 1.0;

        FitConfig c = cfg;
        c.warm_start = mle.params;
        c.n_starts = opts.refit_starts;
        c.seed = cfg.seed + r + 1;
        try {
            auto f = fit(eval, weights, c, data.size());
            draws[r] = to_values(f.params, mle.spec);
        } catch (const FitError&) {
        }
    });

    BootstrapSummary s;
    s.reps = opts.reps;
    s.level = opts.level;
    s.seed = cfg.seed;
    s.stratified = opts.stratify;
    for (auto& d : draws) {
        if (d)
            s.replicates.push_back(std::move(*d));
        else
            ++s.failed_refits;
    }
    if (s.replicates.empty()) throw FitError("every bootstrap refit failed");

    const auto estimate = to_values(mle.params, mle.spec);
    const double tail = 0.5 * (1.0 - opts.level);
    for (std::size_t j = 0; j < names.size(); ++j) {
        std::vector<double> col;
        col.reserve(s.replicates.size());
        for (const auto& row : s.replicates) col.push_back(row[j]);
        std::sort(col.begin(), col.end());
        s.intervals.push_back(
            {names[j], estimate[j], sorted_quantile(col, tail), sorted_quantile(col, 1.0 - tail)});
    }
    return s;
}

}  // namespace fatiguefit
