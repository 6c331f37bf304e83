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

#include "fatiguefit/stress.hpp"

#include <cmath>
#include <stdexcept>

namespace fatiguefit {

TransformKind parse_transform(std::string_view name)
{
    if (name == "walker") return TransformKind::Walker;
    if (name == "nwalker") return TransformKind::NormalizedWalker;
    if (name == "swalker") return TransformKind::SignedWalker;
    if (name == "identity") return TransformKind::Identity;
    throw std::invalid_argument("unknown stress transform '" + std::string(name) +
                                "' (expected walker, nwalker, swalker or identity)");
}

std::string_view transform_name(TransformKind kind) noexcept
{
    switch (kind) {
    case TransformKind::Walker: return "walker";
    case TransformKind::NormalizedWalker: return "nwalker";
    case TransformKind::SignedWalker: return "swalker";
    case TransformKind::Identity: return "identity";
    }
    return "?";
}

double equivalent_stress(const FatigueObservation& obs, const StressTransform& t)
{
    if (t.kind == TransformKind::Identity) return obs.s_eq_direct ? *obs.s_eq_direct : obs.s_max;

    if (!obs.stress_ratio) throw DataError("stress ratio required by the " +
                                           std::string(transform_name(t.kind)) + " transform");
    double r = *obs.stress_ratio;
    if (!(r < 1.0)) throw DataError("stress ratio must be < 1");

    switch (t.kind) {
    case TransformKind::Walker:
        return obs.s_max * std::pow(1.0 - r, t.q);
    case TransformKind::NormalizedWalker:
        return obs.s_max * std::pow(0.5 * (1.0 - r), 1.0 + t.q);
    case TransformKind::SignedWalker: {
        double sign = (r > 0.0) - (r < 0.0);
        return obs.s_max * std::pow(0.5 * (1.0 - r), 1.0 - sign * t.q);
    }
    case TransformKind::Identity:
        break;
    }
    return obs.s_max;
}

void check_transform_inputs(const FatigueDataset& data, TransformKind kind)
{
    for (std::size_t i = 0; i < data.observations.size(); ++i) {
        const auto& o = data.observations[i];
        if (kind == TransformKind::Identity) {
            if (!o.s_eq_direct)
                throw DataError("identity transform needs an s_eq value on every row", i + 1);
            continue;
        }
        if (!o.stress_ratio)
            throw DataError("stress ratio required by the " + std::string(transform_name(kind)) +
                                " transform",
                            i + 1);
        if (o.s_eq_direct)
            throw DataError("row has both a stress ratio and a direct equivalent stress; "
                            "use the identity transform or drop one",
                            i + 1);
    }
}

}  // namespace fatiguefit
