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

// Test-only data generator. Computes equivalent stress, location and scale
// from the closed-form model definitions directly, without going through the
// library's likelihood or quantile code.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fatiguefit/dataset.hpp"
#include "fatiguefit/likelihood.hpp"

namespace fatiguefit::testing {

struct Loading {
    double s_max;
    double ratio;
};

struct TrueModel {
    ModelSpec spec;
    ParamVector p;
};

inline double oracle_seq(const TrueModel& m, const Loading& l)
{
    double r = l.ratio;
    switch (m.spec.transform) {
    case TransformKind::Walker: return l.s_max * std::pow(1.0 - r, m.p.q);
    case TransformKind::NormalizedWalker: return l.s_max * std::pow((1.0 - r) / 2.0, 1.0 + m.p.q);
    case TransformKind::SignedWalker: {
        double sg = r > 0 ? 1.0 : (r < 0 ? -1.0 : 0.0);
        return l.s_max * std::pow((1.0 - r) / 2.0, 1.0 - sg * m.p.q);
    }
    case TransformKind::Identity: return l.s_max;
    }
    return l.s_max;
}

/// Draws one transformed life (log_b N, or ln N for family II); +inf below
/// the fatigue limit.
inline double draw_life_log(const TrueModel& m, const Loading& l, std::mt19937_64& rng)
{
    double s = oracle_seq(m, l);
    if (s <= m.p.a3) return std::numeric_limits<double>::infinity();
    const bool ten = m.spec.base == LogBase::Ten;
    auto lg = [ten](double x) { return ten ? std::log10(x) : std::log(x); };
    double mu = m.p.a1 + m.p.a2 * lg(s - m.p.a3);
    double scale = m.spec.scale == ScaleModel::Constant
                       ? m.p.tau_or_alpha
                       : std::pow(ten ? 10.0 : std::exp(1.0), m.p.b1 + m.p.b2 * lg(s));
    std::normal_distribution<double> z01;
    double z = z01(rng);
    switch (m.spec.family) {
    case Family::NormalOnLog: return mu + scale * z;
    case Family::SinhNormalOnLn: return mu + 2.0 * std::asinh(scale * z / 2.0);
    case Family::BSOnLog: {
        // Y = mu (a Z / 2 + sqrt((a Z / 2)^2 + 1))^2
        double w = scale * z / 2.0;
        double root = w + std::sqrt(w * w + 1.0);
        return mu * root * root;
    }
    }
    return mu;
}

inline double to_cycles(const TrueModel& m, double y)
{
    if (m.spec.family == Family::SinhNormalOnLn || m.spec.base == LogBase::E) return std::exp(y);
    return std::pow(10.0, y);
}

/// Simulates `per_loading` specimens at each loading; lives above `ceiling`
/// cycles become run-outs at the ceiling.
inline FatigueDataset simulate(const TrueModel& m, const std::vector<Loading>& design,
                               std::size_t per_loading, double ceiling, std::mt19937_64& rng)
{
    FatigueDataset d;
    d.unit = "ksi";
    d.name = "synthetic";
    for (std::size_t rep = 0; rep < per_loading; ++rep) {
        for (std::size_t li = 0; li < design.size(); ++li) {
            const auto& l = design[li];
            double n = to_cycles(m, draw_life_log(m, l, rng));
            FatigueObservation o;
            o.s_max = l.s_max;
            o.stress_ratio = l.ratio;
            o.group = "g" + std::to_string(li % 4);
            if (!(n < ceiling)) {
                o.cycles = ceiling;
                o.is_runout = true;
            } else {
                o.cycles = n;
            }
            d.observations.push_back(o);
        }
    }
    return d;
}

/// Ceiling that censors roughly `fraction` of lives under the design.
inline double censoring_ceiling(const TrueModel& m, const std::vector<Loading>& design,
                                double fraction, std::uint64_t seed = 12345)
{
    std::mt19937_64 rng(seed);
    std::vector<double> lives;
    for (int rep = 0; rep < 2000; ++rep)
        for (const auto& l : design) lives.push_back(to_cycles(m, draw_life_log(m, l, rng)));
    std::sort(lives.begin(), lives.end());
    return lives[static_cast<std::size_t>((1.0 - fraction) * static_cast<double>(lives.size()))];
}

/// Stress levels x three stress ratios, Walker-style design above A3 = 30.
inline std::vector<Loading> walker_design()
{
    std::vector<Loading> d;
    for (double r : {-1.0, 0.0, 0.5})
        for (double s : {40.0, 45.0, 50.0, 55.0, 60.0, 70.0, 80.0, 90.0}) {
            double f = std::pow(1.0 - r, 0.5);
            d.push_back({s / f * (r == -1.0 ? 0.75 : 1.0) * (r == 0.5 ? 0.8 : 1.0), r});
        }
    return d;
}

// Lives drawn from the model itself; the longest 30% become run-outs.
inline FatigueDataset model_dataset(const TrueModel& m, std::size_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0, 1);
    FatigueDataset d;
    std::vector<double> lives;
    for (std::size_t i = 0; i < n; ++i) {
        Loading l{40 + 50 * u(rng), -1 + 1.6 * u(rng)};
        double y = draw_life_log(m, l, rng);
        FatigueObservation o;
        o.s_max = l.s_max;
        o.stress_ratio = l.ratio;
        o.cycles = std::isfinite(y) ? to_cycles(m, y) : 1e9;
        o.is_runout = false;
        lives.push_back(o.cycles);
        d.observations.push_back(o);
    }
    std::sort(lives.begin(), lives.end());
    double ceiling = lives[static_cast<std::size_t>(0.7 * static_cast<double>(n))];
    for (auto& o : d.observations)
        if (n > 2 && o.cycles >= ceiling) {
            o.cycles = ceiling;
            o.is_runout = true;
        }
    return d;
}

}  // namespace fatiguefit::testing
