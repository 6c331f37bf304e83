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

#include "fatiguefit/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fatiguefit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sanitize(double v) { return std::isfinite(v) ? v : kInf; }

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, std::span<const double> steps,
                             const NelderMeadOptions& opts)
{
    const std::size_t n = x0.size();
    if (steps.size() != n) throw std::invalid_argument("nelder_mead: steps/x0 size mismatch");

    NelderMeadResult res;
    auto eval = [&](std::span<const double> x) {
        ++res.evaluations;
        return sanitize(f(x));
    };

    if (n == 0) {
        res.value = eval(x0);
        res.x = std::move(x0);
        res.converged = true;
        return res;
    }

    const double dn = static_cast<double>(n);
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / dn;
    const double gamma = 0.75 - 1.0 / (2.0 * dn);
    const double delta = 1.0 - 1.0 / dn;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    fv[0] = eval(x0);
    for (std::size_t i = 0; i < n; ++i) {
        double h = steps[i] != 0.0 ? steps[i] : 1e-3;
        auto& v = simplex[i + 1];
        for (int attempt = 0; attempt < 30; ++attempt) {
            v = x0;
            v[i] += (attempt % 2 == 0) ? h : -h;
            fv[i + 1] = eval(v);
            if (std::isfinite(fv[i + 1])) break;
            if (attempt % 2 == 1) h *= 0.5;
        }
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);

    for (res.iterations = 0; res.iterations < opts.max_iters; ++res.iterations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        if (std::isfinite(fv[worst]) &&
            fv[worst] - fv[best] <= opts.rel_tol * (1.0 + std::fabs(fv[best]))) {
            res.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[k][j];
        }
        for (auto& c : centroid) c /= dn;

        const auto& xw = simplex[worst];
        for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + alpha * (centroid[j] - xw[j]);
        double fr = eval(xr);

        if (fr < fv[best]) {
            for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + beta * (xr[j] - centroid[j]);
            double fe = eval(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            simplex[worst] = xr;
            fv[worst] = fr;
            continue;
        }

        bool outside = fr < fv[worst];
        for (std::size_t j = 0; j < n; ++j) {
            xc[j] = outside ? centroid[j] + gamma * (xr[j] - centroid[j])
                            : centroid[j] - gamma * (centroid[j] - xw[j]);
        }
        double fc = eval(xc);
        if (outside ? fc <= fr : fc < fv[worst]) {
            simplex[worst] = xc;
            fv[worst] = fc;
            continue;
        }

        // Shrink toward the best vertex.
        const auto xb = simplex[best];
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == best) continue;
            for (std::size_t j = 0; j < n; ++j)
                simplex[k][j] = xb[j] + delta * (simplex[k][j] - xb[j]);
            fv[k] = eval(simplex[k]);
        }
    }

    auto it = std::min_element(fv.begin(), fv.end());
    res.x = simplex[static_cast<std::size_t>(it - fv.begin())];
    res.value = *it;
    return res;
}

}  // namespace fatiguefit
