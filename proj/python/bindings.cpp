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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "fatiguefit/curves.hpp"
#include "fatiguefit/dataset.hpp"
#include "fatiguefit/distributions.hpp"
#include "fatiguefit/inference.hpp"
#include "fatiguefit/io.hpp"
#include "fatiguefit/mle.hpp"

namespace py = pybind11;
using namespace fatiguefit;

namespace {

ModelSpec make_spec(const std::string& model, const std::string& stress, const std::string& log_base)
{
    ModelSpec s = parse_model(model);
    s.transform = parse_transform(stress);
    s.base = parse_log_base(log_base);
    return s;
}

std::map<std::string, double> params_dict(const FittedModel& f)
{
    std::map<std::string, double> out;
    auto names = param_names(f.spec);
    auto values = to_values(f.params, f.spec);
    for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = values[i];
    return out;
}

Kernel make_kernel(const std::string& family, double mu, double scale)
{
    if (family == "normal") return NormalKernel{mu, scale};
    if (family == "sinh_normal") return SinhNormalKernel{scale, mu};
    if (family == "bs") return BirnbaumSaundersKernel{scale, mu};
    throw std::invalid_argument("family must be normal, sinh_normal or bs");
}

py::dict ic_dict(const ICReport& ic)
{
    py::dict d;
    d["loglik"] = ic.loglik;
    d["k"] = ic.k;
    d["m"] = ic.m;
    d["aic"] = ic.aic;
    d["bic"] = ic.bic;
    d["aicc"] = ic.aicc ? py::cast(*ic.aicc) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Fatigue-limit S-N model calibration";

    static py::exception<DataError> data_error(m, "DataError", PyExc_ValueError);
    static py::exception<FitError> fit_error(m, "FitError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DataError& e) {
            py::set_error(data_error, e.what());
        } catch (const FitError& e) {
            py::set_error(fit_error, e.what());
        }
    });

    py::class_<FatigueObservation>(m, "Observation")
        .def_readonly("s_max", &FatigueObservation::s_max)
        .def_readonly("stress_ratio", &FatigueObservation::stress_ratio)
        .def_readonly("cycles", &FatigueObservation::cycles)
        .def_readonly("is_runout", &FatigueObservation::is_runout)
        .def_readonly("group", &FatigueObservation::group)
        .def_readonly("s_eq", &FatigueObservation::s_eq_direct);

    py::class_<FatigueDataset>(m, "Dataset")
        .def_readonly("observations", &FatigueDataset::observations)
        .def_readonly("unit", &FatigueDataset::unit)
        .def_readonly("name", &FatigueDataset::name)
        .def("__len__", &FatigueDataset::size)
        .def("runout_count", &FatigueDataset::runout_count)
        .def("failure_count", &FatigueDataset::failure_count);

    m.def(
        "load_dataset",
        [](const std::string& path, const std::map<std::string, std::string>& columns, const std::string& unit) {
            CsvSchema s;
            s.unit = unit;
            for (const auto& [field, header] : columns) s.set(field + "=" + header);
            return load_dataset(path, s);
        },
        py::arg("path"), py::arg("columns") = std::map<std::string, std::string>{}, py::arg("unit") = "ksi");

    py::class_<FittedModel>(m, "FittedModel")
        .def_property_readonly("model", [](const FittedModel& f) { return model_name(f.spec); })
        .def_property_readonly("stress", [](const FittedModel& f) { return std::string(transform_name(f.spec.transform)); })
        .def_property_readonly("log_base", [](const FittedModel& f) { return std::string(log_base_name(f.spec.base)); })
        .def_property_readonly("params", &params_dict)
        .def_readonly("loglik", &FittedModel::loglik)
        .def_readonly("k", &FittedModel::k)
        .def_readonly("m", &FittedModel::m)
        .def_readonly("converged", &FittedModel::converged)
        .def_readonly("seed", &FittedModel::seed)
        .def("to_json", [](const FittedModel& f) { return to_json(f).dump(2); })
        .def_static("from_json", [](const std::string& s) { return fitted_model_from_json(nlohmann::json::parse(s)); })
        .def("__repr__", [](const FittedModel& f) {
            return "<FittedModel " + model_name(f.spec) + " loglik=" + format_number(f.loglik) + ">";
        });

    m.def(
        "fit",
        [](const FatigueDataset& data, const std::string& model, const std::string& stress,
           const std::string& log_base, std::uint64_t seed, std::size_t n_starts) {
            auto spec = make_spec(model, stress, log_base);
            FitConfig cfg;
            cfg.seed = seed;
            cfg.n_starts = n_starts;
            py::gil_scoped_release release;
            return fit(data, spec, cfg);
        },
        py::arg("data"), py::arg("model") = "Ia", py::arg("stress") = "walker", py::arg("log_base") = "10",
        py::arg("seed") = 0, py::arg("n_starts") = 24);

    m.def(
        "information_criteria",
        [](double loglik, std::size_t k, std::size_t n) { return ic_dict(information_criteria(loglik, k, n)); },
        py::arg("loglik"), py::arg("k"), py::arg("m"));

    m.def(
        "profile",
        [](const FatigueDataset& data, const FittedModel& mle, const std::vector<double>& grid, std::uint64_t seed) {
            FitConfig cfg;
            cfg.seed = seed;
            ProfileCurve c;
            {
                py::gil_scoped_release release;
                c = profile_fatigue_limit(data, mle, cfg, grid);
            }
            std::vector<double> a3, ll;
            for (const auto& p : c.points) {
                a3.push_back(p.a3);
                ll.push_back(p.loglik.value_or(-std::numeric_limits<double>::infinity()));
            }
            py::dict d;
            d["a3"] = a3;
            d["loglik"] = ll;
            d["relative"] = c.normalized();
            d["max_loglik"] = c.max_loglik;
            return d;
        },
        py::arg("data"), py::arg("fit"), py::arg("grid"), py::arg("seed") = 0);

    m.def(
        "bootstrap",
        [](const FatigueDataset& data, const FittedModel& mle, std::size_t reps, double level, bool stratify,
           std::uint64_t seed) {
            FitConfig cfg;
            cfg.seed = seed;
            BootstrapOptions opts;
            opts.reps = reps;
            opts.level = level;
            opts.stratify = stratify;
            BootstrapSummary s;
            {
                py::gil_scoped_release release;
                s = bootstrap_ci(data, mle, cfg, opts);
            }
            py::dict out;
            for (const auto& iv : s.intervals) out[py::str(iv.name)] = py::make_tuple(iv.lo, iv.hi);
            return out;
        },
        py::arg("data"), py::arg("fit"), py::arg("reps") = 2000, py::arg("level") = 0.9,
        py::arg("stratify") = true, py::arg("seed") = 0);

    m.def(
        "quantile_curve",
        [](const FittedModel& f, double p, const std::vector<double>& s_grid) {
            auto c = quantile_curve(f, p, s_grid);
            std::vector<double> cycles;
            std::vector<bool> inf;
            for (const auto& pt : c.points) {
                cycles.push_back(pt.infinite_life ? std::numeric_limits<double>::infinity() : pt.cycles);
                inf.push_back(pt.infinite_life);
            }
            py::dict d;
            d["s_eq"] = s_grid;
            d["cycles"] = cycles;
            d["infinite_life"] = inf;
            return d;
        },
        py::arg("fit"), py::arg("p"), py::arg("s_grid"));

    m.def(
        "survival_curve",
        [](const FittedModel& f, double s_max, std::optional<double> ratio, const std::vector<double>& cycles) {
            auto c = survival_curve(f, s_max, ratio, cycles);
            std::vector<double> s;
            for (const auto& pt : c.points) s.push_back(pt.second);
            py::dict d;
            d["s_eq"] = c.s_eq;
            d["cycles"] = cycles;
            d["survival"] = s;
            return d;
        },
        py::arg("fit"), py::arg("s_max"), py::arg("ratio") = py::none(), py::arg("cycles"));

    m.def(
        "probability_plot",
        [](const FatigueDataset& data, const std::string& family, const std::string& scale) {
            auto p = probability_plot(data, parse_plot_family(family), parse_life_scale(scale));
            std::vector<double> pos, emp, fit;
            for (const auto& pt : p.points) {
                pos.push_back(pt.position);
                emp.push_back(pt.empirical);
                fit.push_back(pt.fitted);
            }
            py::dict d;
            d["position"] = pos;
            d["empirical"] = emp;
            d["fitted"] = fit;
            d["correlation"] = p.correlation;
            return d;
        },
        py::arg("data"), py::arg("family") = "normal", py::arg("scale") = "log");

    m.def("plotting_positions", &plotting_positions, py::arg("n"));

    m.def("std_normal_cdf", &std_normal_cdf);
    m.def("std_normal_quantile", &std_normal_quantile);
    m.def(
        "logpdf", [](double y, const std::string& family, double mu, double scale) {
            return logpdf(y, make_kernel(family, mu, scale));
        },
        py::arg("y"), py::arg("family"), py::arg("mu"), py::arg("scale"));
    m.def(
        "survival", [](double y, const std::string& family, double mu, double scale) {
            return survival(y, make_kernel(family, mu, scale));
        },
        py::arg("y"), py::arg("family"), py::arg("mu"), py::arg("scale"));
    m.def(
        "quantile", [](double p, const std::string& family, double mu, double scale) {
            return quantile(p, make_kernel(family, mu, scale));
        },
        py::arg("p"), py::arg("family"), py::arg("mu"), py::arg("scale"));
}
