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

#include <string>
#include <string_view>

#include "fatiguefit/dataset.hpp"

namespace fatiguefit {

enum class TransformKind {
    Walker,            // S_max (1 - R)^q
    NormalizedWalker,  // S_max ((1 - R) / 2)^(1 + q)
    SignedWalker,      // S_max ((1 - R) / 2)^(1 - sign(R) q), sign(0) = 0
    Identity,          // supplied equivalent stress, else S_max
};

struct StressTransform {
    TransformKind kind = TransformKind::Walker;
    double q = 0.0;  // ignored for Identity
};

constexpr bool has_exponent(TransformKind k) noexcept { return k != TransformKind::Identity; }

/// CLI names: walker | nwalker | swalker | identity.
TransformKind parse_transform(std::string_view name);
std::string_view transform_name(TransformKind kind) noexcept;

/// Throws DataError when a stress ratio is required but absent or R >= 1.
double equivalent_stress(const FatigueObservation& obs, const StressTransform& t);

/// Checks that every row carries the inputs `kind` needs.
void check_transform_inputs(const FatigueDataset& data, TransformKind kind);

}  // namespace fatiguefit
