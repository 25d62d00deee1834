/*
 * Copyright (C) 2026 The seaird authors
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
#include "settings.hpp"

#include <seaird/cli/app.hpp>
#include <seaird/error.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>

#ifndef SEAIRD_VERSION
#define SEAIRD_VERSION "0.0.0"
#endif

namespace seaird::cli
{

std::string_view tool_version()
{
    return SEAIRD_VERSION;
}

namespace
{

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> data;
    std::optional<std::string> country;
    std::optional<std::string> train_start;
    std::optional<std::string> train_end;
    std::optional<std::string> test_end;
    std::optional<double> tau;
    std::vector<double> weights;
    std::optional<std::uint64_t> seed;
    std::optional<int> starts;
    std::optional<int> retries;
    std::optional<int> threads;
    std::vector<double> factors;
    std::optional<std::string> out;
    std::optional<std::string> weighting;
    std::optional<std::string> pooling;
    std::optional<std::string> baseline;
    std::optional<std::string> params;
    std::vector<double> x0;
    std::optional<int> horizon;
    std::optional<std::string> url;
    std::optional<std::string> manifest;

    json to_json() const
    {
        json j = json::object();
        auto put = [&](const char* key, const auto& v) {
            if (v)
                j[key] = *v;
        };
        put("data", data);
        put("country", country);
        put("train_start", train_start);
        put("train_end", train_end);
        put("test_end", test_end);
        put("tau", tau);
        put("seed", seed);
        put("starts", starts);
        put("retries", retries);
        put("threads", threads);
        put("out", out);
        put("weighting", weighting);
        put("pooling", pooling);
        put("baseline", baseline);
        put("params", params);
        put("horizon", horizon);
        put("url", url);
        if (!weights.empty())
            j["weights"] = weights;
        if (!factors.empty())
            j["factors"] = factors;
        if (!x0.empty())
            j["x0"] = x0;
        return j;
    }
};

void add_window_flags(CLI::App* c, Flags& f)
{
    c->add_option("--data", f.data, "ECDC daily CSV, or a directory holding ecdc_daily.csv");
    c->add_option("--train-start", f.train_start, "first training day, YYYY-MM-DD");
    c->add_option("--train-end", f.train_end, "last training day, YYYY-MM-DD");
    c->add_option("--test-end", f.test_end, "last test day, YYYY-MM-DD");
    c->add_option("--baseline", f.baseline, "include_prior | exclude_prior");
}

void add_fit_flags(CLI::App* c, Flags& f)
{
    c->add_option("--tau", f.tau, "acceptance threshold on test R2");
    c->add_option("--weights", f.weights, "channel weights infected,deaths")->delimiter(',')->expected(2);
    c->add_option("--seed", f.seed, "multi-start seed");
    c->add_option("--starts", f.starts, "starting points per attempt");
    c->add_option("--retries", f.retries, "re-draws of X(0) after a rejected attempt");
    c->add_option("--threads", f.threads, "worker threads, 0 for all cores");
    c->add_option("--weighting", f.weighting, "diagonal | literal");
    c->add_option("--pooling", f.pooling, "per_channel | pooled");
}

void add_common(CLI::App* c, Flags& f)
{
    c->add_option("--config", f.config, "JSON file with the same settings as the flags; flags win");
    c->add_option("--out", f.out, "output directory");
}

int replay(const Flags& f, std::ostream& out, std::ostream& err)
{
    std::ifstream in(*f.manifest);
    if (!in) {
        err << "error: cannot open manifest " << *f.manifest << '\n';
        return exit_validation;
    }
    json m;
    try {
        m = json::parse(in);
    } catch (const json::parse_error& e) {
        err << "error: manifest " << *f.manifest << ": " << e.what() << '\n';
        return exit_validation;
    }
    if (!m.contains("command") || !m.contains("config") || !m.contains("inputs") || !m.contains("outputs")) {
        err << "error: " << *f.manifest << " is not a seaird manifest\n";
        return exit_validation;
    }
    for (const auto& input : m["inputs"]) {
        const auto path = input.at("path").get<std::string>();
        std::string digest;
        try {
            digest = sha256_file(path);
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return exit_validation;
        }
        if (digest != input.at("sha256").get<std::string>()) {
            err << "error: input " << path << " changed since the manifest was written\n";
            return exit_validation;
        }
    }
    json settings = m["config"];
    if (f.out)
        settings["out"] = *f.out;
    const int code = execute(m["command"].get<std::string>(), settings, out, err);
    if (code != exit_ok && code != exit_below_threshold)
        return code;

    const auto dir = out_dir(settings);
    bool same      = true;
    for (const auto& o : m["outputs"]) {
        const auto name = o.at("path").get<std::string>();
        const bool ok   = std::filesystem::exists(dir / name) && sha256_file(dir / name) == o.at("sha256").get<std::string>();
        out << (ok ? "reproduced " : "differs ") << name << '\n';
        same = same && ok;
    }
    if (!same) {
        err << "error: replay did not reproduce the recorded outputs\n";
        return exit_numerical;
    }
    return code;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"SEAIRD grey-box epidemic toolkit", "seaird"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);
    app.footer("Exit codes: 0 ok, 2 input or validation error, 3 fit below threshold, 4 numerical failure.\n"
               "The data file defaults to $SEAIRD_DATA_DIR/ecdc_daily.csv.");

    Flags f;
    auto* sim = app.add_subcommand("simulate", "integrate the model forward and write per-day compartments");
    add_common(sim, f);
    sim->add_option("--params", f.params, "JSON file with parameters, initial_state, population, eta, horizon");
    sim->add_option("--x0", f.x0, "initial state S,E,I,A,R,D")->delimiter(',')->expected(6);
    sim->add_option("--horizon", f.horizon, "days to simulate");

    auto* fit = app.add_subcommand("fit", "estimate parameters for one country window");
    add_common(fit, f);
    fit->add_option("--country", f.country, "country id or label");
    add_window_flags(fit, f);
    add_fit_flags(fit, f);

    auto* sens = app.add_subcommand("sensitivity", "re-estimate under inflated case counts");
    add_common(sens, f);
    sens->add_option("--country", f.country, "country id or label");
    add_window_flags(sens, f);
    add_fit_flags(sens, f);
    sens->add_option("--factors", f.factors, "undercount factors, e.g. 0.05,0.1,0.2")->delimiter(',');

    auto* ctry = app.add_subcommand("countries", "fit every window of the registry");
    add_common(ctry, f);
    ctry->add_option("--data", f.data, "ECDC daily CSV, or a directory holding ecdc_daily.csv");
    ctry->add_option("--baseline", f.baseline, "include_prior | exclude_prior");
    add_fit_flags(ctry, f);

    auto* fetch = app.add_subcommand("fetch", "download the daily CSV verbatim");
    add_common(fetch, f);
    fetch->add_option("--url", f.url, "source URL");

    auto* rep = app.add_subcommand("replay", "re-run a recorded command and compare its outputs");
    rep->add_option("--manifest", f.manifest, "manifest.json of an earlier run")->required();
    rep->add_option("--out", f.out, "output directory, defaults to the recorded one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_validation;
    }

    if (rep->parsed())
        return replay(f, out, err);

    const auto* cmd = app.get_subcommands().front();
    json settings;
    try {
        const json config = f.config ? load_config(*f.config) : json::object();
        settings          = merge_settings(config, f.to_json());
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }
    return execute(cmd->get_name(), settings, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"seaird"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace seaird::cli
