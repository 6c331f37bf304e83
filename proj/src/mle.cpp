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

#include "fatiguefit/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "fatiguefit/nelder_mead.hpp"
#include "fatiguefit/parallel.hpp"

namespace fatiguefit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxRestarts = 10;

bool within(double v, const Interval& i) { return v >= i.lo && v <= i.hi; }

// Maps between ParamVector and the unconstrained search coordinates:
// A1 A2 [A3] [q] (log scale | B1 B2).
class Coordinates {
public:
    Coordinates(const ModelSpec& spec, std::optional<double> fixed_a3)
        : spec_(spec), fixed_a3_(fixed_a3)
    {
    }

    std::vector<double> encode(const ParamVector& p) const
    {
        std::vector<double> x{p.a1, p.a2};
        if (!fixed_a3_) x.push_back(p.a3);
        if (has_exponent(spec_.transform)) x.push_back(p.q);
        if (spec_.scale == ScaleModel::Constant) {
            x.push_back(std::log(p.tau_or_alpha));
        } else {
            x.push_back(p.b1);
            x.push_back(p.b2);
        }
        return x;
    }

    ParamVector decode(std::span<const double> x) const
    {
        ParamVector p;
        std::size_t i = 0;
        p.a1 = x[i++];
        p.a2 = x[i++];
        p.a3 = fixed_a3_ ? *fixed_a3_ : x[i++];
        if (has_exponent(spec_.transform)) p.q = x[i++];
        if (spec_.scale == ScaleModel::Constant) {
            p.tau_or_alpha = std::exp(x[i++]);
        } else {
            p.b1 = x[i++];
            p.b2 = x[i++];
        }
        return p;
    }

    std::vector<double> steps(const ParamVector& p) const
    {
        std::vector<double> h{0.5, 0.25};
        if (!fixed_a3_) h.push_back(0.05 * std::max(1.0, std::fabs(p.a3)));
        if (has_exponent(spec_.transform)) h.push_back(0.1);
        if (spec_.scale == ScaleModel::Constant) {
            h.push_back(0.2);
        } else {
            h.push_back(0.5);
            h.push_back(0.25);
        }
        return h;
    }

private:
    ModelSpec spec_;
    std::optional<double> fixed_a3_;
};

ParamVector least_squares_start(const LikelihoodEvaluator& eval, std::span<const double> weights,
                                double q, double a3)
{
    const ModelSpec& spec = eval.spec();
    ParamVector p;
    p.q = q;
    p.a3 = a3;

    double sw = 0, sx = 0, sy = 0;
    auto pts = eval.failure_points(q, weights);
    std::vector<double> xs;
    xs.reserve(pts.size());
    for (const auto& pt : pts) {
        double x = pt.s_eq > a3 ? log_in_base(pt.s_eq - a3, spec.base) : 0.0;
        xs.push_back(x);
        sw += pt.weight;
        sx += pt.weight * x;
        sy += pt.weight * pt.y;
    }
    double mx = sx / sw, my = sy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        sxx += pts[i].weight * (xs[i] - mx) * (xs[i] - mx);
        sxy += pts[i].weight * (xs[i] - mx) * (pts[i].y - my);
    }
    p.a2 = sxx > 1e-12 ? sxy / sxx : 0.0;
    p.a1 = my - p.a2 * mx;

    double rss = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double r = pts[i].y - p.a1 - p.a2 * xs[i];
        rss += pts[i].weight * r * r;
    }
    double sd = std::sqrt(rss / std::max(1.0, sw - 2.0));
    sd = std::max(sd, 1e-3 * std::max(1.0, std::fabs(my)));

    double scale = sd;
    if (spec.family == Family::BSOnLog) scale = sd / std::max(std::fabs(my), 1e-6);
    p.tau_or_alpha = scale;
    p.b1 = log_in_base(scale, spec.base);
    p.b2 = 0.0;
    return p;
}

// Nearest q (on a grid over the bounds) at which A3 lies below every failure.
std::optional<double> feasible_exponent(const LikelihoodEvaluator& eval,
                                        std::span<const double> weights, double a3, double q_hint,
                                        const Interval& q_bounds)
{
    if (eval.min_failure_stress(q_hint, weights) > a3) return q_hint;
    if (!has_exponent(eval.spec().transform)) return std::nullopt;
    std::optional<double> best;
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
        double q = q_bounds.lo + (q_bounds.hi - q_bounds.lo) * i / n;
        if (eval.min_failure_stress(q, weights) > a3 * 1.001 &&
            (!best || std::fabs(q - q_hint) < std::fabs(*best - q_hint)))
            best = q;
    }
    return best;
}

struct StartResult {
    bool feasible = false;
    ParamVector params;
    double loglik = -kInf;
    bool converged = false;
    std::size_t restarts = 0;
};

}  // namespace

bool ParamBounds::contains(const ParamVector& p, const ModelSpec& spec) const noexcept
{
    if (!within(p.a1, a1) || !within(p.a2, a2) || !(p.a3 >= a3_min)) return false;
    if (has_exponent(spec.transform) && !within(p.q, q)) return false;
    if (spec.scale == ScaleModel::Constant) return p.tau_or_alpha > 0.0;
    return within(p.b1, b1) && within(p.b2, b2);
}

ParamVector heuristic_start(const FatigueDataset& data, const ModelSpec& spec, double q,
                            double a3)
{
    LikelihoodEvaluator eval(data, spec);
    return least_squares_start(eval, {}, q, a3);
}

FittedModel fit(const FatigueDataset& data, const ModelSpec& spec, const FitConfig& cfg)
{
    LikelihoodEvaluator eval(data, spec);
    return fit(eval, {}, cfg, data.size());
}

FittedModel fit(const LikelihoodEvaluator& eval, std::span<const double> weights,
                const FitConfig& cfg, std::size_t m)
{
    const ModelSpec& spec = eval.spec();
    const bool with_q = has_exponent(spec.transform);
    const std::size_t n_starts = std::max<std::size_t>(1, cfg.n_starts);
    Coordinates coords(spec, cfg.fixed_a3);

    auto objective = [&](std::span<const double> x) {
        ParamVector p = coords.decode(x);
        if (!cfg.bounds.contains(p, spec)) return kInf;
        auto ll = eval(p, weights);
        return ll ? -*ll : kInf;
    };

    // Start points: index 0 is the warm start or the heuristic seed; the rest
    // come from a Latin hypercube over (q, A3 / ceiling).
    const double q0 = cfg.warm_start ? cfg.warm_start->q : 0.5;
    const Interval q_range{std::max(cfg.bounds.q.lo, q0 - 1.0), std::min(cfg.bounds.q.hi, q0 + 1.0)};
    std::vector<std::pair<double, double>> lhs(n_starts);  // (q, a3 fraction)
    {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<std::size_t> perm_q(n_starts), perm_a(n_starts);
        std::iota(perm_q.begin(), perm_q.end(), 0);
        std::iota(perm_a.begin(), perm_a.end(), 0);
        std::shuffle(perm_q.begin(), perm_q.end(), rng);
        std::shuffle(perm_a.begin(), perm_a.end(), rng);
        for (std::size_t i = 0; i < n_starts; ++i) {
            double fq = (static_cast<double>(perm_q[i]) + u(rng)) / static_cast<double>(n_starts);
            double fa = (static_cast<double>(perm_a[i]) + u(rng)) / static_cast<double>(n_starts);
            lhs[i] = {q_range.lo + fq * (q_range.hi - q_range.lo), 0.98 * fa};
        }
    }

    auto make_start = [&](std::size_t i) -> std::optional<ParamVector> {
        double q = with_q ? (i == 0 ? q0 : lhs[i].first) : 0.0;
        if (cfg.fixed_a3) {
            auto qf = feasible_exponent(eval, weights, *cfg.fixed_a3, q, cfg.bounds.q);
            if (!qf) return std::nullopt;
            if (i == 0 && cfg.warm_start && *qf == q) {
                ParamVector p = *cfg.warm_start;
                p.a3 = *cfg.fixed_a3;
                return p;
            }
            return least_squares_start(eval, weights, *qf, *cfg.fixed_a3);
        }
        if (i == 0 && cfg.warm_start) return *cfg.warm_start;
        double ceiling = eval.min_failure_stress(q, weights);
        double frac = i == 0 ? 0.5 : lhs[i].second;
        double a3 = std::max(cfg.bounds.a3_min, frac * ceiling);
        return least_squares_start(eval, weights, q, a3);
    };

    std::vector<StartResult> results(n_starts);
    NelderMeadOptions nm{cfg.max_iters, cfg.rel_tol};
    parallel_for(n_starts, [&](std::size_t i) {
        auto start = make_start(i);
        if (!start && i == 0 && cfg.warm_start) start = make_start(1 % n_starts);
        if (!start) return;
        auto x = coords.encode(*start);
        double f0 = objective(x);
        if (!std::isfinite(f0) && i == 0 && cfg.warm_start && !cfg.fixed_a3) {
            // Warm start no longer feasible for this data; use the heuristic.
            double ceiling = eval.min_failure_stress(q0, weights);
            x = coords.encode(least_squares_start(
                eval, weights, with_q ? q0 : 0.0, std::max(cfg.bounds.a3_min, 0.5 * ceiling)));
            f0 = objective(x);
        }
        if (!std::isfinite(f0)) return;

        StartResult r;
        auto steps = coords.steps(coords.decode(x));
        auto nmr = nelder_mead(objective, x, steps, nm);
        for (; r.restarts < kMaxRestarts; ++r.restarts) {
            auto again = nelder_mead(objective, nmr.x, coords.steps(coords.decode(nmr.x)), nm);
            bool improved = nmr.value - again.value > cfg.rel_tol * (1.0 + std::fabs(nmr.value));
            if (again.value < nmr.value) nmr = std::move(again);
            if (!improved) break;
        }
        r.feasible = std::isfinite(nmr.value);
        r.params = coords.decode(nmr.x);
        r.loglik = -nmr.value;
        r.converged = nmr.converged;
        results[i] = r;
    });

    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < n_starts; ++i) {
        if (!results[i].feasible) continue;
        if (!best || results[i].loglik > results[*best].loglik) best = i;
    }
    if (!best) throw FitError("no feasible start point for model " + model_name(spec));

    const auto& r = results[*best];
    FittedModel out;
    out.spec = spec;
    out.params = r.params;
    out.loglik = r.loglik;
    out.k = param_count(spec);
    out.m = m;
    out.converged = r.converged;
    out.n_restarts_used = r.restarts;
    out.seed = cfg.seed;
    return out;
}

}  // namespace fatiguefit
