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

#include <random>
#include <sstream>

#include "fatiguefit/dataset.hpp"

using namespace fatiguefit;

namespace {
FatigueDataset parse(const std::string& text, const CsvSchema& schema = {})
{
    std::istringstream in(text);
    return parse_dataset(in, schema, "t");
}
}  // namespace

TEST_CASE("parses the canonical layout")
{
    auto d = parse(
        "s_max,stress_ratio,cycles,runout,group,s_eq\n"
        "50,-1,12000,0,A,\n"
        "30, 0.5 ,1e7,TRUE,B,\n"
        "\n"
        "45,0,3.5e5,false,,\n");
    REQUIRE(d.size() == 3);
    CHECK(d.runout_count() == 1);
    CHECK(d.failure_count() + d.runout_count() == d.size());
    CHECK(d.observations[1].stress_ratio == 0.5);
    CHECK(d.observations[1].is_runout);
    CHECK(d.observations[2].group == std::nullopt);
    CHECK(d.observations[0].group == "A");
    CHECK(d.unit == "ksi");
}

TEST_CASE("column mapping uses native headers")
{
    CsvSchema s;
    s.set("s_max=Smax (ksi)");
    s.set("stress_ratio=R");
    s.set("cycles=N");
    s.set("runout=censored");
    s.set("unit=MPa");
    auto d = parse("N,Smax (ksi),R,censored\n1000,40,0.1,0\n", s);
    CHECK(d.observations[0].s_max == 40.0);
    CHECK(d.unit == "MPa");
    CHECK_THROWS_AS(s.set("bogus=x"), std::invalid_argument);
    CHECK_THROWS_AS(s.set("noequals"), std::invalid_argument);
}

TEST_CASE("direct equivalent stress without S_max")
{
    auto d = parse("s_eq,cycles,runout\n270.5,123456,0\n");
    CHECK(d.observations[0].s_eq_direct == 270.5);
}

TEST_CASE("validation errors carry row numbers")
{
    auto row_of = [](const std::string& text) -> std::size_t {
        try {
            parse(text);
        } catch (const DataError& e) {
            return e.row();
        }
        return 999;
    };
    CHECK(row_of("s_max,cycles,runout\n40,0,0\n") == 1);
    CHECK(row_of("s_max,cycles,runout\n40,10,0\n40,-5,0\n") == 2);
    CHECK(row_of("s_max,stress_ratio,cycles,runout\n40,0.2,10,0\n40,1.0,10,0\n") == 2);
    CHECK(row_of("s_max,cycles,runout\n40,abc,0\n") == 1);
    CHECK(row_of("s_max,cycles,runout\n40,10,maybe\n") == 1);
    CHECK(row_of("s_max,cycles,runout\n40,10,1\n") == 0);  // no failures
    CHECK(row_of("s_max,runout\n40,0\n") == 0);           // missing column
    CHECK_THROWS_AS(parse(""), DataError);
    CHECK_THROWS_AS(load_dataset("/nonexistent/file.csv"), DataError);
}

TEST_CASE("runout flag spellings")
{
    CHECK(parse_runout_flag("1"));
    CHECK(parse_runout_flag("True"));
    CHECK_FALSE(parse_runout_flag(" FALSE "));
    CHECK_FALSE(parse_runout_flag("0"));
    CHECK_THROWS(parse_runout_flag("yes"));
}

TEST_CASE("write then parse reproduces random datasets")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        FatigueDataset d;
        d.unit = "ksi";
        d.name = "t";
        int n = 1 + static_cast<int>(u(rng) * 20);
        for (int i = 0; i < n; ++i) {
            FatigueObservation o;
            o.cycles = std::exp(5 + 10 * u(rng));
            o.is_runout = i > 0 && u(rng) < 0.3;
            if (u(rng) < 0.3) {
                o.s_eq_direct = 100 + 200 * u(rng);
            } else {
                o.s_max = 10 + 80 * u(rng);
                o.stress_ratio = -2 + 2.9 * u(rng);
            }
            if (u(rng) < 0.5) o.group = u(rng) < 0.5 ? "1/8" : "a,\"b\"";
            d.observations.push_back(o);
        }
        std::stringstream ss;
        write_dataset(ss, d);
        CHECK(parse_dataset(ss, {}, "t") == d);
    }
}
