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

// fatiguefit command-line tool.

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fatiguefit/curves.hpp"
#include "fatiguefit/dataset.hpp"
#include "fatiguefit/inference.hpp"
#include "fatiguefit/io.hpp"
#include "fatiguefit/mle.hpp"
#include "fatiguefit/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace fatiguefit;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit : int {
    kOk = 0,
    kFlagError = 2,
    kDataError = 3,
    kConvergence = 4,
    kInternal = 5,
    kMismatch = 6,
};

class FlagError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string to_hex(const unsigned char* p, unsigned n)
{
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < n; ++i) {
        s += digits[p[i] >> 4];
        s += digits[p[i] & 15];
    }
    return s;
}

std::string sha256_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    return to_hex(md, len);
}

struct Options {
    std::string command;
    std::vector<std::string> argv;

    std::string data;
    std::vector<std::string> columns;
    std::string unit = "ksi";
    std::string model = "Ia";
    std::string stress = "walker";
    std::string log_base = "10";
    std::uint64_t seed = 0;
    std::size_t starts = 24;
    std::string out;
    std::string manifest;

    // command specific
    std::vector<std::string> fits;
    std::string param = "A3";
    std::string grid;
    std::size_t reps = 2000;
    double level = 0.90;
    std::string stratify_by = "group";
    std::string fit_file;
    double smax = 0.0;
    std::optional<double> ratio;
    std::string cycles = "1e3:1e8:51";
    std::string family = "normal";
    std::string scale = "log";
    std::string rerun_manifest;
};

struct RunRecord {
    std::optional<FittedModel> model;
    ordered_json extra = ordered_json::object();
    std::vector<fs::path> inputs;
    bool converged = true;
};

CsvSchema schema_of(const Options& o)
{
    CsvSchema s;
    s.unit = o.unit;
    for (const auto& c : o.columns) {
        try {
            s.set(c);
        } catch (const std::invalid_argument& e) {
            throw FlagError(std::string("--col: ") + e.what());
        }
    }
    return s;
}

ModelSpec spec_of(const Options& o)
{
    try {
        ModelSpec s = parse_model(o.model);
        s.transform = parse_transform(o.stress);
        s.base = parse_log_base(o.log_base);
        return s;
    } catch (const std::invalid_argument& e) {
        throw FlagError(e.what());
    }
}

FitConfig config_of(const Options& o)
{
    FitConfig c;
    c.seed = o.seed;
    c.n_starts = o.starts;
    return c;
}

GridSpec grid_of(const std::string& flag, const std::string& text)
{
    try {
        return GridSpec::parse(text);
    } catch (const std::invalid_argument& e) {
        throw FlagError(flag + ": " + e.what());
    }
}

FatigueDataset load(const Options& o, RunRecord& rec)
{
    if (o.data.empty()) throw FlagError("--data is required");
    rec.inputs.emplace_back(o.data);
    auto d = load_dataset(o.data, schema_of(o));
    return d;
}

FittedModel fit_or_throw(const FatigueDataset& d, const Options& o)
{
    auto spec = spec_of(o);
    check_transform_inputs(d, spec.transform);
    FittedModel f;
    try {
        f = fit(d, spec, config_of(o));
    } catch (const FitError& e) {
        throw ConvergenceError(e.what());
    }
    f.dataset_hash = sha256_file(o.data);
    return f;
}

std::ofstream open_out(const Options& o)
{
    if (o.out.empty()) throw FlagError("--out is required");
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw DataError("cannot write " + o.out);
    return f;
}

void write_json_file(const std::string& path, const ordered_json& j)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path);
    f << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

void cmd_fit(const Options& o, RunRecord& rec)
{
    auto d = load(o, rec);
    auto f = fit_or_throw(d, o);
    rec.model = f;
    write_json_file(o.out, to_json(f));
    rec.converged = f.converged;
    rec.extra["loglik"] = f.loglik;
    std::printf("%s logL = %.2f (k = %zu, m = %zu)%s\n", model_name(f.spec).c_str(), f.loglik, f.k, f.m,
                f.converged ? "" : ", not converged");
}

void cmd_icompare(const Options& o, RunRecord& rec)
{
    if (o.fits.size() < 2) throw FlagError("icompare needs at least two fit files");
    std::vector<RankedModel> models;
    std::string hash;
    for (const auto& path : o.fits) {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open " + path);
        rec.inputs.emplace_back(path);
        FittedModel f;
        try {
            f = fitted_model_from_json(json::parse(in));
        } catch (const json::exception& e) {
            throw DataError(path + ": " + e.what());
        }
        if (hash.empty()) hash = f.dataset_hash;
        if (f.dataset_hash != hash) throw DataError(path + ": fitted to a different dataset (hash mismatch)");
        models.push_back({model_name(f.spec) + "/" + std::string(transform_name(f.spec.transform)),
                          information_criteria(f)});
    }
    auto ranked = rank_by_aic(models);
    auto out = open_out(o);
    write_ranking_csv(out, ranked);
    rec.extra["dataset_sha256"] = hash;
    rec.extra["best"] = ranked.front().label;
    std::printf("best by AIC: %s (%.1f)\n", ranked.front().label.c_str(), ranked.front().ic.aic);
}

void cmd_profile(const Options& o, RunRecord& rec)
{
    if (o.param != "A3") throw FlagError("--param: only A3 can be profiled");
    auto g = grid_of("--grid", o.grid);
    auto d = load(o, rec);
    auto mle = fit_or_throw(d, o);
    rec.model = mle;
    auto curve = profile_fatigue_limit(d, mle, config_of(o), g.values());
    auto out = open_out(o);
    write_profile_csv(out, curve);
    rec.converged = mle.converged;
    rec.extra["mle_loglik"] = mle.loglik;
    rec.extra["mle_A3"] = mle.params.a3;
    if (auto iv = curve.interval_above()) {
        rec.extra["interval_0.1465"] = {iv->lo, iv->hi};
        std::printf("A3 = %.4g, relative likelihood >= %.4g on [%.4g, %.4g]\n", mle.params.a3, kProfileCut95,
                    iv->lo, iv->hi);
    }
}

void cmd_bootstrap(const Options& o, RunRecord& rec)
{
    if (o.stratify_by != "group" && o.stratify_by != "none")
        throw FlagError("--stratify-by must be group or none");
    auto d = load(o, rec);
    auto mle = fit_or_throw(d, o);
    rec.model = mle;
    BootstrapOptions opts;
    opts.reps = o.reps;
    opts.level = o.level;
    opts.stratify = o.stratify_by == "group";
    BootstrapSummary s;
    try {
        s = bootstrap_ci(d, mle, config_of(o), opts);
    } catch (const std::invalid_argument& e) {
        throw FlagError(e.what());
    }
    auto out = open_out(o);
    write_bootstrap_csv(out, s);
    rec.converged = mle.converged;
    rec.extra["failed_refits"] = s.failed_refits;
    std::printf("%zu replicates, %zu failed refits\n", s.reps, s.failed_refits);
}

FittedModel model_for_curves(const Options& o, RunRecord& rec)
{
    if (!o.fit_file.empty()) {
        std::ifstream in(o.fit_file);
        if (!in) throw DataError("cannot open " + o.fit_file);
        rec.inputs.emplace_back(o.fit_file);
        try {
            rec.model = fitted_model_from_json(json::parse(in));
        } catch (const json::exception& e) {
            throw DataError(o.fit_file + ": " + e.what());
        }
        return *rec.model;
    }
    auto d = load(o, rec);
    auto f = fit_or_throw(d, o);
    rec.converged = f.converged;
    rec.model = f;
    return f;
}

void cmd_curves(const Options& o, RunRecord& rec)
{
    auto g = grid_of("--grid", o.grid);
    auto f = model_for_curves(o, rec);
    auto s = g.values();
    auto out = open_out(o);
    write_quantile_csv(out, quantile_curve(f, 0.05, s), quantile_curve(f, 0.5, s), quantile_curve(f, 0.95, s));
    rec.extra["model"] = model_name(f.spec);
}

void cmd_survival(const Options& o, RunRecord& rec)
{
    if (!(o.smax > 0)) throw FlagError("--smax must be positive");
    auto g = grid_of("--cycles", o.cycles);
    if (!(g.lo > 0)) throw FlagError("--cycles: grid must be positive");
    std::vector<double> n;
    for (std::size_t i = 0; i < g.count; ++i) {
        double t = g.count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(g.count - 1);
        n.push_back(std::pow(10.0, std::log10(g.lo) + t * (std::log10(g.hi) - std::log10(g.lo))));
    }
    auto f = model_for_curves(o, rec);
    SurvivalCurve c;
    try {
        c = survival_curve(f, o.smax, o.ratio, n);
    } catch (const DataError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw FlagError(e.what());
    }
    auto out = open_out(o);
    write_survival_csv(out, c);
    rec.extra["s_eq"] = c.s_eq;
    std::printf("s_eq = %.6g\n", c.s_eq);
}

void cmd_pplot(const Options& o, RunRecord& rec)
{
    PlotFamily fam;
    LifeScale sc;
    try {
        fam = parse_plot_family(o.family);
        sc = parse_life_scale(o.scale);
    } catch (const std::invalid_argument& e) {
        throw FlagError(e.what());
    }
    auto d = load(o, rec);
    auto p = probability_plot(d, fam, sc);
    auto out = open_out(o);
    write_probability_plot_csv(out, p);
    rec.extra["correlation"] = p.correlation;
    std::printf("plot correlation %.6f\n", p.correlation);
}

// ---------------------------------------------------------------------------

void add_data_flags(CLI::App* c, Options& o)
{
    c->add_option("--data", o.data, "dataset CSV");
    c->add_option("--col", o.columns, "column mapping field=Header (repeatable)");
    c->add_option("--unit", o.unit, "stress unit label");
}

void add_model_flags(CLI::App* c, Options& o)
{
    add_data_flags(c, o);
    c->add_option("--model", o.model, "Ia, Ib, IIa, IIb, IIIa or IIIb");
    c->add_option("--stress", o.stress, "walker, nwalker, swalker or identity");
    c->add_option("--log-base", o.log_base, "10 or e");
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--starts", o.starts, "optimizer start points")->check(CLI::PositiveNumber);
}

void add_out_flags(CLI::App* c, Options& o)
{
    c->add_option("--out", o.out, "output file")->required();
    c->add_option("--manifest", o.manifest, "manifest path (default: <out>.manifest.json)");
}

std::unique_ptr<CLI::App> build_app(Options& o)
{
    auto app = std::make_unique<CLI::App>("Fatigue-limit S-N model calibration", "fatiguefit");
    app->set_version_flag("--version", kVersion);
    app->require_subcommand(1);

    auto* fit = app->add_subcommand("fit", "fit one model by maximum likelihood");
    add_model_flags(fit, o);
    add_out_flags(fit, o);

    auto* ic = app->add_subcommand("icompare", "rank fitted models by information criteria");
    ic->add_option("fits", o.fits, "fit JSON files")->required();
    add_out_flags(ic, o);

    auto* prof = app->add_subcommand("profile", "profile likelihood of the fatigue limit");
    add_model_flags(prof, o);
    prof->add_option("--param", o.param, "profiled parameter (A3)");
    prof->add_option("--grid", o.grid, "lo:hi:count")->required();
    add_out_flags(prof, o);

    auto* boot = app->add_subcommand("bootstrap", "percentile bootstrap intervals");
    add_model_flags(boot, o);
    boot->add_option("--reps", o.reps, "bootstrap replicates");
    boot->add_option("--level", o.level, "interval level");
    boot->add_option("--stratify-by", o.stratify_by, "group or none");
    add_out_flags(boot, o);

    auto* curves = app->add_subcommand("curves", "0.05/0.5/0.95 S-N quantile curves");
    add_model_flags(curves, o);
    curves->add_option("--fit", o.fit_file, "fitted model JSON (instead of --data)");
    curves->add_option("--grid", o.grid, "equivalent stress grid lo:hi:count")->required();
    add_out_flags(curves, o);

    auto* surv = app->add_subcommand("survival", "survival curve at a fixed loading");
    add_model_flags(surv, o);
    surv->add_option("--fit", o.fit_file, "fitted model JSON (instead of --data)");
    surv->add_option("--smax", o.smax, "maximum stress")->required();
    surv->add_option("--ratio", o.ratio, "stress ratio R");
    surv->add_option("--cycles", o.cycles, "log-spaced cycle grid lo:hi:count");
    add_out_flags(surv, o);

    auto* pp = app->add_subcommand("pplot", "probability plot coordinates");
    add_data_flags(pp, o);
    pp->add_option("--family", o.family, "normal or bs");
    pp->add_option("--scale", o.scale, "cycles, log or log10");
    add_out_flags(pp, o);

    auto* rerun = app->add_subcommand("rerun", "re-execute a manifest and compare outputs");
    rerun->add_option("--manifest", o.rerun_manifest, "manifest to replay")->required();
    return app;
}

fs::path manifest_path(const Options& o)
{
    return o.manifest.empty() ? fs::path(o.out + ".manifest.json") : fs::path(o.manifest);
}

void write_manifest(const Options& o, const RunRecord& rec)
{
    ordered_json m;
    m["tool"] = "fatiguefit";
    m["version"] = kVersion;
    m["command"] = o.command;
    m["argv"] = o.argv;
    m["cwd"] = fs::current_path().string();
    if (!o.data.empty()) m["dataset"] = {{"path", o.data}, {"sha256", sha256_file(o.data)}};
    ordered_json inputs = ordered_json::array();
    for (const auto& p : rec.inputs) inputs.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
    m["inputs"] = inputs;
    if (rec.model) {
        m["spec"] = to_json(rec.model->spec);
        m["params"] = to_json(rec.model->params, rec.model->spec);
    }
    if (!o.data.empty() && o.command != "pplot") m["config"] = to_json(config_of(o));
    m["seed"] = o.seed;
    m["result"] = rec.extra;
    m["outputs"] = ordered_json::array({{{"path", o.out}, {"sha256", sha256_file(o.out)}}});
    write_json_file(manifest_path(o).string(), m);
}

int execute(Options& o)
{
    RunRecord rec;
    const auto& c = o.command;
    if (c == "fit") cmd_fit(o, rec);
    else if (c == "icompare") cmd_icompare(o, rec);
    else if (c == "profile") cmd_profile(o, rec);
    else if (c == "bootstrap") cmd_bootstrap(o, rec);
    else if (c == "curves") cmd_curves(o, rec);
    else if (c == "survival") cmd_survival(o, rec);
    else if (c == "pplot") cmd_pplot(o, rec);
    write_manifest(o, rec);
    if (!rec.converged) {
        std::fprintf(stderr, "fatiguefit: optimizer did not converge\n");
        return kConvergence;
    }
    return kOk;
}

int parse(const std::vector<std::string>& args, Options& o)
{
    auto app = build_app(o);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app->parse(rev);
    } catch (const CLI::ParseError& e) {
        int rc = app->exit(e);
        return rc == 0 ? -1 : kFlagError;
    }
    o.command = app->get_subcommands().front()->get_name();
    o.argv = args;
    return kOk;
}

int rerun(const Options& outer)
{
    std::ifstream in(outer.rerun_manifest);
    if (!in) throw DataError("cannot open " + outer.rerun_manifest);
    json m;
    try {
        m = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(outer.rerun_manifest + ": " + e.what());
    }
    auto args = m.at("argv").get<std::vector<std::string>>();
    fs::current_path(m.at("cwd").get<std::string>());
    for (const auto& input : m.at("inputs")) {
        auto path = input.at("path").get<std::string>();
        if (sha256_file(path) != input.at("sha256").get<std::string>())
            throw DataError(path + ": content changed since the manifest was written");
    }

    Options o;
    if (int rc = parse(args, o); rc != kOk) return rc;
    auto tmp = fs::temp_directory_path() / ("fatiguefit-rerun-" + std::to_string(::getpid()));
    fs::create_directories(tmp);
    std::string original = o.out;
    o.out = (tmp / fs::path(original).filename()).string();
    o.manifest = (tmp / "manifest.json").string();
    int rc = execute(o);
    bool same = sha256_file(o.out) == m.at("outputs").at(0).at("sha256").get<std::string>();
    fs::remove_all(tmp);
    std::printf("%s: %s\n", original.c_str(), same ? "reproduced byte-identically" : "DIFFERS");
    if (rc != kOk) return rc;
    return same ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    Options o;
    try {
        int rc = parse(args, o);
        if (rc == -1) return kOk;
        if (rc != kOk) return rc;
        if (o.command == "rerun") return rerun(o);
        return execute(o);
    } catch (const FlagError& e) {
        std::fprintf(stderr, "fatiguefit: %s\n", e.what());
        return kFlagError;
    } catch (const DataError& e) {
        std::fprintf(stderr, "fatiguefit: data error: %s\n", e.what());
        return kDataError;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "fatiguefit: fit failed: %s\n", e.what());
        return kConvergence;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fatiguefit: %s\n", e.what());
        return kInternal;
    }
}
