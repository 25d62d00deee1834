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
#include <seaird/sensitivity.hpp>

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string_view>

namespace seaird::cli
{

namespace
{

constexpr std::array<std::string_view, 21> known_keys{
    "data",  "country", "train_start", "train_end", "test_end", "tau",     "weights",
    "seed",  "starts",  "retries",     "threads",   "factors",  "out",     "weighting",
    "pooling", "baseline", "registry", "params",    "x0",       "horizon", "url",
};

[[noreturn]] void bad_setting(const std::string& key, std::string_view expected)
{
    throw ValidationError("setting '" + key + "' must be " + std::string(expected));
}

double number(const json& s, const std::string& key)
{
    const auto& v = s.at(key);
    if (!v.is_number())
        bad_setting(key, "a number");
    return v.get<double>();
}

long long integer(const json& s, const std::string& key)
{
    const auto& v = s.at(key);
    if (!v.is_number_integer())
        bad_setting(key, "an integer");
    return v.get<long long>();
}

std::string text(const json& s, const std::string& key)
{
    const auto& v = s.at(key);
    if (!v.is_string())
        bad_setting(key, "a string");
    return v.get<std::string>();
}

bool has(const json& s, const std::string& key)
{
    return s.contains(key) && !s.at(key).is_null();
}

Date date_setting(const json& s, const std::string& key)
{
    try {
        return Date::from_iso(text(s, key));
    } catch (const ValidationError& e) {
        throw ValidationError("setting '" + key + "': " + e.what());
    }
}

} // namespace

json load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config file " + path.string() + ": " + e.what());
    }
    if (!j.is_object())
        throw ValidationError("config file " + path.string() + " must hold a JSON object");
    check_keys(j);
    return j;
}

void check_keys(const json& settings)
{
    for (const auto& [key, _] : settings.items()) {
        bool known = false;
        for (auto k : known_keys)
            known = known || k == key;
        if (!known)
            throw ValidationError("unknown setting '" + key + "'");
    }
}

json merge_settings(const json& config, const json& flags)
{
    json merged = config.is_object() ? config : json::object();
    for (const auto& [key, value] : flags.items())
        if (!value.is_null())
            merged[key] = value;
    check_keys(merged);
    return merged;
}

std::filesystem::path data_path(const json& settings)
{
    std::filesystem::path p;
    if (has(settings, "data")) {
        p = text(settings, "data");
    } else if (const char* dir = std::getenv(data_dir_env)) {
        p = dir;
    } else {
        throw ValidationError(std::string("no data file: pass --data or set ") + data_dir_env);
    }
    if (std::filesystem::is_directory(p))
        p /= default_data_file;
    return p;
}

std::filesystem::path out_dir(const json& settings)
{
    return has(settings, "out") ? std::filesystem::path(text(settings, "out")) : std::filesystem::path(".");
}

json window_json(const CountryWindow& w)
{
    json j{{"country_id", w.country_id},
           {"label", w.label},
           {"train_start", w.train_start.iso()},
           {"train_end", w.train_end.iso()},
           {"test_end", w.test_end.iso()}};
    if (w.population)
        j["population"] = *w.population;
    return j;
}

CountryWindow window_from_json(const json& j)
{
    if (!j.is_object())
        throw ValidationError("registry entries must be objects");
    if (!has(j, "country_id"))
        throw ValidationError("registry entry lacks 'country_id'");
    const auto id = text(j, "country_id");
    for (const char* key : {"train_start", "train_end"})
        if (!has(j, key))
            throw ValidationError("registry entry " + id + " lacks '" + key + "'");
    std::optional<Date> test_end;
    if (has(j, "test_end"))
        test_end = date_setting(j, "test_end");
    auto w = make_window(id, has(j, "label") ? text(j, "label") : id, date_setting(j, "train_start"),
                         date_setting(j, "train_end"), test_end);
    if (has(j, "population"))
        w.population = number(j, "population");
    w.validate();
    return w;
}

std::vector<CountryWindow> registry(const json& settings)
{
    if (!settings.contains("registry"))
        return window_registry();
    const auto& r = settings.at("registry");
    if (!r.is_array())
        bad_setting("registry", "an array of windows");
    std::vector<CountryWindow> out;
    for (const auto& entry : r)
        out.push_back(window_from_json(entry));
    if (out.empty())
        throw ValidationError("registry is empty");
    return out;
}

CountryWindow resolve_window(const json& settings)
{
    if (!has(settings, "country"))
        throw ValidationError("setting 'country' is required");
    const auto country = text(settings, "country");

    std::optional<CountryWindow> base;
    if (settings.contains("registry")) {
        for (const auto& w : registry(settings))
            if (w.country_id == country || w.label == country)
                base = w;
    } else {
        base = find_window(country);
    }
    if (!base) {
        if (!has(settings, "train_start") || !has(settings, "train_end"))
            throw ValidationError("country '" + country +
                                  "' has no registered window; pass --train-start and --train-end");
        base = make_window(country, country, date_setting(settings, "train_start"),
                           date_setting(settings, "train_end"));
    }

    CountryWindow w = *base;
    const bool new_train = has(settings, "train_start") || has(settings, "train_end");
    if (has(settings, "train_start"))
        w.train_start = date_setting(settings, "train_start");
    if (has(settings, "train_end"))
        w.train_end = date_setting(settings, "train_end");
    if (has(settings, "test_end"))
        w.test_end = date_setting(settings, "test_end");
    else if (new_train)
        w.test_end = w.train_end + (w.train_end - w.train_start);
    w.validate();
    return w;
}

BaselinePolicy baseline_policy(const json& settings)
{
    if (!has(settings, "baseline"))
        return BaselinePolicy::include_prior;
    const auto v = text(settings, "baseline");
    if (v == "include_prior")
        return BaselinePolicy::include_prior;
    if (v == "exclude_prior")
        return BaselinePolicy::exclude_prior;
    bad_setting("baseline", "\"include_prior\" or \"exclude_prior\"");
}

std::vector<double> factors(const json& settings)
{
    if (!has(settings, "factors"))
        return {default_undercount_factors.begin(), default_undercount_factors.end()};
    const auto& f = settings.at("factors");
    if (!f.is_array() || f.empty())
        bad_setting("factors", "a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& v : f) {
        if (!v.is_number())
            bad_setting("factors", "a non-empty array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

FitConfig fit_config(const json& settings, const CountryWindow& window)
{
    FitConfig cfg;
    cfg.train_start = window.train_start;
    cfg.train_end   = window.train_end;
    cfg.test_end    = window.test_end;
    if (has(settings, "tau"))
        cfg.tau = number(settings, "tau");
    if (has(settings, "seed")) {
        const auto& v = settings.at("seed");
        if (!v.is_number_unsigned())
            bad_setting("seed", "a non-negative integer");
        cfg.seed = v.get<std::uint64_t>();
    }
    if (has(settings, "starts"))
        cfg.n_starts = static_cast<int>(integer(settings, "starts"));
    if (has(settings, "retries"))
        cfg.max_retries = static_cast<int>(integer(settings, "retries"));
    if (has(settings, "threads")) {
        const auto t = integer(settings, "threads");
        if (t < 0)
            bad_setting("threads", "a non-negative integer");
        cfg.threads = static_cast<unsigned>(t);
    }
    if (has(settings, "weights")) {
        const auto& w = settings.at("weights");
        if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
            bad_setting("weights", "a pair [infected, deaths]");
        cfg.weights = WeightVector{w[0].get<double>(), w[1].get<double>()};
    }
    if (has(settings, "weighting")) {
        const auto v = text(settings, "weighting");
        if (v == "diagonal")
            cfg.weighting = WeightingMode::diagonal;
        else if (v == "literal")
            cfg.weighting = WeightingMode::literal;
        else
            bad_setting("weighting", "\"diagonal\" or \"literal\"");
    }
    if (has(settings, "pooling")) {
        const auto v = text(settings, "pooling");
        if (v == "per_channel")
            cfg.r2_pooling = PoolingMode::per_channel;
        else if (v == "pooled")
            cfg.r2_pooling = PoolingMode::pooled;
        else
            bad_setting("pooling", "\"per_channel\" or \"pooled\"");
    }
    cfg.validate();
    return cfg;
}

void fill_fit_defaults(json& settings)
{
    const FitConfig d;
    auto put = [&](const char* key, const json& v) {
        if (!has(settings, key))
            settings[key] = v;
    };
    put("tau", d.tau);
    put("seed", d.seed);
    put("starts", d.n_starts);
    put("retries", d.max_retries);
    put("threads", d.threads);
    put("weighting", "diagonal");
    put("pooling", "per_channel");
    put("baseline", "include_prior");
}

} // namespace seaird::cli
