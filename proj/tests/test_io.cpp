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

#include <sstream>

#include "fatiguefit/io.hpp"

using namespace fatiguefit;

TEST_CASE("fitted model json round trip")
{
    FittedModel f;
    f.spec = parse_model("IIIb");
    f.spec.transform = TransformKind::SignedWalker;
    f.spec.base = LogBase::E;
    f.params = ParamVector{16.6, -4.37, 35.3, 0.557, 0.0, 1.23456789012345678, -0.1};
    f.loglik = -351.123456789;
    f.k = 6;
    f.m = 85;
    f.converged = true;
    f.n_restarts_used = 3;
    f.seed = 123456789012345ULL;
    f.dataset_hash = "abc";
    auto j = to_json(f);
    auto text = j.dump();
    auto g = fitted_model_from_json(nlohmann::json::parse(text));
    CHECK(model_name(g.spec) == "IIIb");
    CHECK(g.spec.transform == TransformKind::SignedWalker);
    CHECK(g.spec.base == LogBase::E);
    CHECK(g.params.b1 == f.params.b1);
    CHECK(g.params.a3 == f.params.a3);
    CHECK(g.loglik == f.loglik);
    CHECK(g.seed == f.seed);
    CHECK(g.dataset_hash == "abc");
    CHECK(j.contains("dataset_sha256"));
    CHECK(j["params"].contains("B2"));
    CHECK_FALSE(j["params"].contains("alpha"));
}

TEST_CASE("ranking by AIC")
{
    std::vector<RankedModel> v{{"Ib", information_criteria(-100, 6, 50)},
                               {"Ia", information_criteria(-99, 5, 50)},
                               {"IIa", information_criteria(-90, 5, 50)}};
    auto r = rank_by_aic(v);
    CHECK(r[0].label == "IIa");
    CHECK(r[1].label == "Ia");
    CHECK(r[2].label == "Ib");

    std::vector<RankedModel> tie{{"big", information_criteria(-100, 6, 50)},
                                 {"small", information_criteria(-101, 5, 50)}};
    CHECK(tie[0].ic.aic == tie[1].ic.aic);
    CHECK(rank_by_aic(tie)[0].label == "small");

    std::ostringstream os;
    write_ranking_csv(os, r);
    CHECK(os.str().rfind("rank,model,", 0) == 0);
}

TEST_CASE("number formatting")
{
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
}
