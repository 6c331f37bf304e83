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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "fatiguefit/mle.hpp"
#include "support/synthetic.hpp"

using namespace fatiguefit;
using namespace fatiguefit::testing;

namespace {

TrueModel truth(const char* name, TransformKind t = TransformKind::Walker)
{
    TrueModel m;
    m.spec = parse_model(name);
    m.spec.transform = t;
    m.p = ParamVector{7.0, -2.0, 30.0, 0.5, 0.3, -0.5, -0.5};
    if (m.spec.family == Family::BSOnLog) m.p.tau_or_alpha = 0.05;
    if (m.spec.family == Family::SinhNormalOnLn) {
        m.p.a1 *= std::log(10.0);
        m.p.a2 *= std::log(10.0);
        m.p.tau_or_alpha = 0.7;
    }
    return m;
}

FatigueDataset sample(const TrueModel& m, std::size_t per, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    auto design = walker_design();
    return simulate(m, design, per, censoring_ceiling(m, design, 0.1), rng);
}

}  // namespace

TEST_CASE("same seed gives bit-identical fits")
{
    auto m = truth("Ib");
    auto d = sample(m, 3, 11);
    FitConfig cfg;
    cfg.seed = 99;
    cfg.n_starts = 6;
    auto a = fit(d, m.spec, cfg);
    auto b = fit(d, m.spec, cfg);
    CHECK(std::memcmp(&a.params, &b.params, sizeof(ParamVector)) == 0);
    CHECK(a.loglik == b.loglik);
    CHECK(a.m == d.size());
    CHECK(a.k == 6);
}

TEST_CASE("fits are feasible and never worse than the start")
{
    for (const char* name : {"Ia", "Ib", "IIa", "IIb", "IIIa", "IIIb"}) {
        INFO(name);
        auto m = truth(name);
        auto d = sample(m, 2, 5);
        FitConfig cfg;
        cfg.n_starts = 4;
        cfg.seed = 1;
        auto f = fit(d, m.spec, cfg);
        LikelihoodEvaluator ev(d, m.spec);
        auto at = ev(f.params);
        REQUIRE(at.has_value());
        CHECK(*at == doctest::Approx(f.loglik).epsilon(1e-12));
        CHECK(f.params.a3 >= 0.0);
        CHECK(f.params.a3 < ev.min_failure_stress(f.params.q, {}));
        if (m.spec.scale == ScaleModel::Constant) CHECK(f.params.tau_or_alpha > 0.0);
        CHECK(std::isfinite(f.loglik));

        auto h = heuristic_start(d, m.spec, 0.5, 0.0);
        if (auto start = ev(h)) CHECK(f.loglik >= *start);
        // The true parameters are a feasible point the optimizer should beat.
        if (auto t = ev(m.p)) CHECK(f.loglik >= *t - 1e-6);
    }
}

TEST_CASE("warm start and fixed fatigue limit")
{
    auto m = truth("Ia");
    auto d = sample(m, 2, 8);
    auto f = fit(d, m.spec);
    FitConfig cfg;
    cfg.fixed_a3 = 20.0;
    auto g = fit(d, m.spec, cfg);
    CHECK(g.params.a3 == 20.0);
    CHECK(g.loglik <= f.loglik + 1e-9);

    FitConfig warm;
    warm.warm_start = f.params;
    warm.n_starts = 1;
    auto w = fit(d, m.spec, warm);
    CHECK(w.loglik >= f.loglik - 1e-6);
}

TEST_CASE("no feasible start raises FitError")
{
    FatigueDataset d;
    for (int i = 0; i < 5; ++i) {
        FatigueObservation o;
        o.s_max = 50 + i;
        o.stress_ratio = 0.0;
        o.cycles = 1e5;
        o.is_runout = false;
        d.observations.push_back(o);
    }
    auto spec = parse_model("Ia");
    FitConfig cfg;
    cfg.fixed_a3 = 60.0;  // above every failure stress
    cfg.bounds.q = {0.0, 0.0};
    CHECK_THROWS_AS(fit(d, spec, cfg), FitError);
}

TEST_CASE("maximized likelihood does not depend on the log base")
{
    auto m = truth("Ib");
    auto d = sample(m, 3, 21);
    auto s10 = m.spec;
    auto se = m.spec;
    se.base = LogBase::E;
    FitConfig cfg;
    cfg.seed = 4;
    auto f10 = fit(d, s10, cfg);
    auto fe = fit(d, se, cfg);
    CHECK(std::fabs(f10.loglik - fe.loglik) < 1e-4);
    CHECK(fe.params.a3 == doctest::Approx(f10.params.a3).epsilon(1e-3));
}

TEST_CASE("recovers synthetic parameters")
{
    for (const char* name : {"Ia", "IIIa"}) {
        INFO(name);
        auto m = truth(name);
        auto d = sample(m, 40, 2024);
        auto f = fit(d, m.spec);
        CHECK(f.converged);
        CHECK(f.params.a3 == doctest::Approx(30.0).epsilon(0.05));
        CHECK(f.params.q == doctest::Approx(0.5).epsilon(0.1));
        CHECK(f.params.tau_or_alpha == doctest::Approx(m.p.tau_or_alpha).epsilon(0.1));
    }
}
