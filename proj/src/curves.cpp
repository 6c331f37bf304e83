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

#include "fatiguefit/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fatiguefit/likelihood.hpp"
#include "fatiguefit/nelder_mead.hpp"
#include "fatiguefit/summation.hpp"

namespace fatiguefit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

double transform_life(double cycles, LifeScale s)
{
    switch (s) {
    case LifeScale::Cycles: return cycles;
    case LifeScale::Log: return std::log(cycles);
    case LifeScale::Log10: return std::log10(cycles);
    }
    return cycles;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b)
{
    const double n = static_cast<double>(a.size());
    double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

QuantileCurve quantile_curve(const FittedModel& fit, double p, const std::vector<double>& s_grid)
{
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1)");
    QuantileCurve curve;
    curve.p = p;
    curve.model = model_name(fit.spec);
    for (double s : s_grid) {
        if (!(s > fit.params.a3)) {
            curve.points.push_back({s, kInf, true});
            continue;
        }
        auto kernel = life_kernel(s, fit.params, fit.spec);
        double cycles = kernel ? life_inverse(quantile(p, *kernel), fit.spec) : kNaN;
        curve.points.push_back({s, cycles, false});
    }
    return curve;
}

double survival_at(const FittedModel& fit, double s_eq, double cycles)
{
    if (!(s_eq > fit.params.a3)) return 1.0;
    if (!(cycles > 0.0)) return 1.0;
    auto kernel = life_kernel(s_eq, fit.params, fit.spec);
    if (!kernel) return kNaN;
    double y = life_transform(cycles, fit.spec);
    if (std::holds_alternative<BirnbaumSaundersKernel>(*kernel) && !(y > 0.0)) return 1.0;
    return survival(y, *kernel);
}

SurvivalCurve survival_curve(const FittedModel& fit, double s_max,
                             std::optional<double> stress_ratio,
                             const std::vector<double>& cycle_grid)
{
    FatigueObservation obs;
    obs.s_max = s_max;
    obs.stress_ratio = stress_ratio;
    obs.cycles = 1.0;

    SurvivalCurve curve;
    curve.s_max = s_max;
    curve.stress_ratio = stress_ratio;
    curve.s_eq = equivalent_stress(obs, {fit.spec.transform, fit.params.q});
    for (double n : cycle_grid) curve.points.emplace_back(n, survival_at(fit, curve.s_eq, n));
    return curve;
}

PlotFamily parse_plot_family(std::string_view name)
{
    if (name == "normal") return PlotFamily::Normal;
    if (name == "bs") return PlotFamily::BirnbaumSaunders;
    throw std::invalid_argument("plot family must be normal or bs, got '" + std::string(name) + "'");
}

LifeScale parse_life_scale(std::string_view name)
{
    if (name == "cycles") return LifeScale::Cycles;
    if (name == "log") return LifeScale::Log;
    if (name == "log10") return LifeScale::Log10;
    throw std::invalid_argument("life scale must be cycles, log or log10, got '" +
                                std::string(name) + "'");
}

std::string_view plot_family_name(PlotFamily f) noexcept
{
    return f == PlotFamily::Normal ? "normal" : "bs";
}

std::string_view life_scale_name(LifeScale s) noexcept
{
    switch (s) {
    case LifeScale::Cycles: return "cycles";
    case LifeScale::Log: return "log";
    case LifeScale::Log10: return "log10";
    }
    return "?";
}

std::vector<double> plotting_positions(std::size_t n)
{
    std::vector<double> pos(n);
    for (std::size_t i = 0; i < n; ++i)
        pos[i] = (static_cast<double>(i + 1) - 0.375) / (static_cast<double>(n) + 0.25);
    return pos;
}

ProbabilityPlot probability_plot(const FatigueDataset& data, PlotFamily family, LifeScale scale)
{
    std::vector<double> failures, runouts;
    for (const auto& o : data.observations)
        (o.is_runout ? runouts : failures).push_back(transform_life(o.cycles, scale));
    if (failures.size() < 3) throw DataError("probability plot needs at least three failures");
    std::sort(failures.begin(), failures.end());

    auto in_support = [&](double v) { return family == PlotFamily::Normal || v > 0.0; };
    if (!std::all_of(failures.begin(), failures.end(), in_support) ||
        !std::all_of(runouts.begin(), runouts.end(), in_support))
        throw DataError("Birnbaum-Saunders probability plot needs positive transformed lives");

    // Coordinates: (location or log location, log scale).
    auto kernel_of = [&](std::span<const double> x) -> Kernel {
        if (family == PlotFamily::Normal) return NormalKernel{x[0], std::exp(x[1])};
        return BirnbaumSaundersKernel{std::exp(x[1]), std::exp(x[0])};
    };
    auto objective = [&](std::span<const double> x) {
        Kernel k = kernel_of(x);
        NeumaierSum s;
        for (double v : failures) s += logpdf(v, k);
        for (double v : runouts) s += log_survival(v, k);
        double ll = s.value();
        return std::isfinite(ll) ? -ll : kInf;
    };

    const double n = static_cast<double>(failures.size());
    double mean = std::accumulate(failures.begin(), failures.end(), 0.0) / n;
    double ss = 0;
    for (double v : failures) ss += (v - mean) * (v - mean);
    double sd = std::max(std::sqrt(ss / (n - 1.0)), 1e-12 * std::max(1.0, std::fabs(mean)));

    std::vector<double> x0;
    if (family == PlotFamily::Normal)
        x0 = {mean, std::log(sd)};
    else
        x0 = {std::log(failures[failures.size() / 2]), std::log(sd / mean)};
    std::vector<double> steps{family == PlotFamily::Normal ? 0.5 * sd : 0.1, 0.2};
    auto best = nelder_mead(objective, x0, steps, {4000, 1e-12});
    for (int i = 0; i < 5; ++i) {
        auto again = nelder_mead(objective, best.x, steps, {4000, 1e-12});
        if (!(again.value < best.value - 1e-12 * (1.0 + std::fabs(best.value)))) break;
        best = again;
    }

    ProbabilityPlot plot;
    plot.family = family;
    plot.scale = scale;
    plot.fitted_kernel = kernel_of(best.x);
    auto pos = plotting_positions(failures.size());
    std::vector<double> fitted(failures.size());
    for (std::size_t i = 0; i < failures.size(); ++i) {
        fitted[i] = quantile(pos[i], plot.fitted_kernel);
        plot.points.push_back({pos[i], failures[i], fitted[i]});
    }
    plot.correlation = pearson(failures, fitted);
    return plot;
}

}  // namespace fatiguefit
