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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <variant>
#include <vector>

#include "fatiguefit/distributions.hpp"

namespace fatiguefit::testing {

// Adaptive Gauss-Kronrod over [lo, hi], split at the given breakpoints.
template <class F>
inline double integrate(F f, std::vector<double> breaks)
{
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, breaks[i], breaks[i + 1], 15, 1e-14);
    return total;
}

inline double density_mass(const Kernel& k)
{
    auto f = [&](double y) { return std::exp(logpdf(y, k)); };
    if (auto* b = std::get_if<BirnbaumSaundersKernel>(&k)) {
        double m = b->mu;
        return integrate(f, {0.0, m * 0.25, m * 0.5, m * 0.8, m, m * 1.25, m * 2.0, m * 4.0}) +
               boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                   f, m * 4.0, std::numeric_limits<double>::infinity(), 15, 1e-14);
    }
    double mu = std::visit([](const auto& kk) { return kk.mu; }, k);
    double s = std::holds_alternative<NormalKernel>(k) ? std::get<NormalKernel>(k).sigma
                                                       : std::get<SinhNormalKernel>(k).alpha;
    std::vector<double> br;
    for (int i = -12; i <= 12; ++i) br.push_back(mu + i * s);
    double inf = std::numeric_limits<double>::infinity();
    auto tail = [&](double a, double b) {
        return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14);
    };
    return tail(-inf, br.front()) + integrate(f, br) + tail(br.back(), inf);
}

}  // namespace fatiguefit::testing
