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
#include <seaird/integrator.hpp>
#include <seaird/sensitivity.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include <httplib.h>

namespace seaird::cli
{

namespace
{

struct Artifact {
    std::string name;
    std::string sha256;
};

/// What a command read and wrote; becomes the manifest.
struct RunLog {
    json inputs = json::array();
    std::vector<Artifact> outputs;
};

std::string utc_now()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json num(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json num(const std::optional<double>& v)
{
    return v ? num(*v) : json(nullptr);
}

void record_input(RunLog& log, const std::string& role, const std::filesystem::path& path)
{
    log.inputs.push_back({{"role", role},
                          {"path", std::filesystem::absolute(path).lexically_normal().string()},
                          {"sha256", sha256_file(path)}});
}

void write_output(RunLog& log, const std::filesystem::path& dir, const std::string& name, const std::string& bytes)
{
    std::filesystem::create_directories(dir);
    std::ofstream f(dir / name, std::ios::binary);
    if (!f)
        throw ValidationError("cannot write " + (dir / name).string());
    f << bytes;
    f.close();
    if (!f)
        throw ValidationError("cannot write " + (dir / name).string());
    log.outputs.push_back({name, sha256_hex(bytes)});
}

json parameters_json(const ParameterVector& p)
{
    json j = json::object();
    for (auto name : ParameterVector::names)
        j[std::string(name)] = num(p.get(name));
    return j;
}

json state_json(const StateVector& x)
{
    json j = json::object();
    const auto a = x.to_array();
    for (std::size_t i = 0; i < StateVector::size; ++i)
        j[std::string(StateVector::names[i])] = num(a[i]);
    return j;
}

json r2_json(const RSquared& r)
{
    return {{"infected", num(r.infected)}, {"deaths", num(r.deaths)}, {"pooled", num(r.pooled)}};
}

json fit_json(const FitResult& r, const FitConfig& cfg)
{
    json starts = json::array();
    for (const auto& s : r.diagnostics)
        starts.push_back({{"attempt", s.attempt},
                          {"start", s.start},
                          {"initial_objective", num(s.initial_value)},
                          {"objective", num(s.value)},
                          {"evaluations", s.evaluations},
                          {"converged", s.converged},
                          {"diverged", s.diverged}});
    return {{"accepted", r.accepted},
            {"tau", cfg.tau},
            {"gate_r2", num(r.gate_value)},
            {"parameters", parameters_json(r.phi)},
            {"initial_state", state_json(r.x0)},
            {"r2", {{"train", r2_json(r.r2_train)}, {"test", r2_json(r.r2_test)}}},
            {"objective", num(r.objective_value)},
            {"restarts", r.n_restarts_used},
            {"weights", {{"infected", r.weights.infected}, {"deaths", r.weights.deaths}}},
            {"case_baseline", r.observed.case_baseline},
            {"diagnostics", {{"starts", starts}}}};
}

std::string predicted_csv(const FitResult& r, const FitConfig& cfg, double population)
{
    std::ostringstream out;
    out << "date,day,split,observed_cum_infected,predicted_cum_infected,observed_cum_deaths,"
           "predicted_cum_deaths,observed_infected_per_1000,predicted_infected_per_1000,"
           "observed_deaths_per_1000,predicted_deaths_per_1000" << csv_eol;
    const double scale = 1000.0 / population;
    for (std::size_t k = 0; k < r.observed.size(); ++k) {
        const Date day = r.observed.start_date + static_cast<int>(k);
        const auto& y  = r.observed.values[k];
        const auto& yh = r.predicted.values[k];
        out << day.iso() << ',' << k << ',' << (day <= cfg.train_end ? "train" : "test") << ','
            << format_double(y.cum_infected) << ',' << format_double(yh.cum_infected) << ','
            << format_double(y.cum_deaths) << ',' << format_double(yh.cum_deaths) << ','
            << format_double(y.cum_infected * scale) << ',' << format_double(yh.cum_infected * scale) << ','
            << format_double(y.cum_deaths * scale) << ',' << format_double(yh.cum_deaths * scale) << csv_eol;
    }
    return out.str();
}

struct Prepared {
    CountryWindow window;
    SeriesBuild build;
    FitConfig cfg;
    DemographicConstants demographics;
};

Prepared prepare(const std::vector<DailyRecord>& records, const json& settings, const CountryWindow& window)
{
    Prepared p{window, build_series(records, window, baseline_policy(settings)), fit_config(settings, window), {}};
    if (!(p.build.population > 0.0))
        throw DataError("population of " + window.country_id +
                        " is unknown; the data has no population column value and the window sets none");
    p.demographics.population = p.build.population;
    return p;
}

json fit_document(const Prepared& p, const FitResult& r)
{
    json j = {{"country", p.window.country_id},
              {"label", p.window.label},
              {"window",
               {{"train_start", p.window.train_start.iso()},
                {"train_end", p.window.train_end.iso()},
                {"test_end", p.window.test_end.iso()}}},
              {"population", p.build.population},
              {"data_repairs", {{"cases", p.build.case_repairs}, {"deaths", p.build.death_repairs}}}};
    j.update(fit_json(r, p.cfg));
    return j;
}

std::vector<DailyRecord> load_data(json& settings, RunLog& log)
{
    const auto path = data_path(settings);
    auto records    = read_daily_csv(path);
    record_input(log, "data", path);
    settings["data"] = std::filesystem::absolute(path).lexically_normal().string();
    return records;
}

void pin_window(json& settings, const CountryWindow& w)
{
    settings["train_start"] = w.train_start.iso();
    settings["train_end"]   = w.train_end.iso();
    settings["test_end"]    = w.test_end.iso();
}

// ---------------------------------------------------------------------------

double param_field(const json& obj, const std::string& section, std::string_view name)
{
    const std::string key(name);
    if (!obj.contains(key))
        throw ValidationError("params file: missing '" + section + "." + key + "'");
    if (!obj.at(key).is_number())
        throw ValidationError("params file: '" + section + "." + key + "' must be a number");
    return obj.at(key).get<double>();
}

StateVector parse_x0(const json& v)
{
    std::array<double, StateVector::size> a{};
    if (v.is_array()) {
        if (v.size() != StateVector::size)
            throw ValidationError("setting 'x0' must list S,E,I,A,R,D");
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!v[i].is_number())
                throw ValidationError("setting 'x0' must list S,E,I,A,R,D");
            a[i] = v[i].get<double>();
        }
    } else if (v.is_object()) {
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] = param_field(v, "initial_state", StateVector::names[i]);
    } else {
        throw ValidationError("initial state must be an object or a list S,E,I,A,R,D");
    }
    return StateVector::from_array(a);
}

int cmd_simulate(json& settings, RunLog& log, std::ostream& out, bool& to_dir)
{
    if (!settings.contains("params") || !settings["params"].is_string())
        throw ValidationError("setting 'params' is required");
    const std::filesystem::path params_path = settings["params"].get<std::string>();
    std::ifstream in(params_path);
    if (!in)
        throw ValidationError("cannot open params file " + params_path.string());
    json pf;
    try {
        pf = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("params file " + params_path.string() + ": " + e.what());
    }
    record_input(log, "params", params_path);
    settings["params"] = std::filesystem::absolute(params_path).lexically_normal().string();
    if (!pf.is_object() || !pf.contains("parameters") || !pf["parameters"].is_object())
        throw ValidationError("params file: missing 'parameters' object");

    std::array<double, ParameterVector::size> pa{};
    for (std::size_t i = 0; i < pa.size(); ++i)
        pa[i] = param_field(pf["parameters"], "parameters", ParameterVector::names[i]);
    const auto phi = ParameterVector::from_array(pa);

    StateVector x0;
    if (settings.contains("x0") && !settings["x0"].is_null())
        x0 = parse_x0(settings["x0"]);
    else if (pf.contains("initial_state"))
        x0 = parse_x0(pf["initial_state"]);
    else
        throw ValidationError("params file: missing 'initial_state' (or pass --x0)");

    int horizon = 0;
    if (settings.contains("horizon") && !settings["horizon"].is_null()) {
        if (!settings["horizon"].is_number_integer())
            throw ValidationError("setting 'horizon' must be an integer");
        horizon = settings["horizon"].get<int>();
    } else if (pf.contains("horizon")) {
        if (!pf["horizon"].is_number_integer())
            throw ValidationError("params file: 'horizon' must be an integer");
        horizon = pf["horizon"].get<int>();
    } else {
        throw ValidationError("setting 'horizon' is required");
    }
    if (horizon < 0)
        throw ValidationError("horizon = " + std::to_string(horizon) + " must be >= 0");

    DemographicConstants d;
    d.population = pf.contains("population") ? param_field(pf, "params", "population") : x0.total();
    if (pf.contains("eta"))
        d.eta = param_field(pf, "params", "eta");
    phi.validate();
    d.validate();
    validate_state(x0);

    const auto traj = integrate(x0, phi, d, horizon);
    const auto cum  = cumulative_infected(traj);
    std::ostringstream csv;
    csv << "day,S,E,I,A,R,D,cum_infected" << csv_eol;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const auto& x = traj.states[k];
        csv << traj.days[k] << ',' << format_double(x.S) << ',' << format_double(x.E) << ','
            << format_double(x.I) << ',' << format_double(x.A) << ',' << format_double(x.R) << ','
            << format_double(x.D) << ',' << format_double(cum[k]) << csv_eol;
    }
    settings["horizon"] = horizon;
    settings["x0"]      = json::array({x0.S, x0.E, x0.I, x0.A, x0.R, x0.D});
    to_dir              = settings.contains("out") && !settings["out"].is_null();
    if (to_dir)
        write_output(log, out_dir(settings), "trajectory.csv", csv.str());
    else
        out << csv.str();
    return exit_ok;
}

int cmd_fit(json& settings, RunLog& log, std::ostream& out)
{
    fill_fit_defaults(settings);
    const auto records = load_data(settings, log);
    const auto window  = resolve_window(settings);
    pin_window(settings, window);
    const auto p = prepare(records, settings, window);

    const auto r   = fit(p.build.series, p.demographics, p.cfg);
    const auto dir = out_dir(settings);
    write_output(log, dir, "fit_result.json", fit_document(p, r).dump(2) + "\n");
    write_output(log, dir, "predicted.csv", predicted_csv(r, p.cfg, p.build.population));

    out << window.label << ": test R2 " << format_double(r.gate_value) << (r.accepted ? " >= " : " < ") << "tau "
        << format_double(p.cfg.tau) << '\n';
    return r.accepted ? exit_ok : exit_below_threshold;
}

std::string factor_label(double f)
{
    return format_double(f);
}

int cmd_sensitivity(json& settings, RunLog& log, std::ostream& out)
{
    fill_fit_defaults(settings);
    const auto fs = factors(settings);
    settings["factors"] = fs;
    const auto records  = load_data(settings, log);
    const auto window   = resolve_window(settings);
    pin_window(settings, window);
    const auto p = prepare(records, settings, window);

    const auto report = sensitivity_table(p.build.series, p.demographics, p.cfg, fs);

    std::ostringstream csv;
    csv << "parameter,raw";
    for (double f : fs)
        csv << ",value_" << factor_label(f) << ",deviation_pct_" << factor_label(f);
    csv << ",notes" << csv_eol;
    json rows = json::array();
    for (const auto& row : report.rows) {
        csv << row.parameter << ',' << format_double(row.raw);
        std::string notes;
        json cells = json::array();
        for (const auto& c : row.cells) {
            csv << ',' << (c.value ? format_double(*c.value) : "") << ','
                << (c.deviation_percent ? format_double(*c.deviation_percent) : "");
            if (!c.error.empty())
                notes += (notes.empty() ? "" : "; ") + factor_label(c.factor) + ": " + c.error;
            cells.push_back({{"factor", c.factor},
                             {"value", num(c.value)},
                             {"deviation_percent", num(c.deviation_percent)},
                             {"error", c.error.empty() ? json(nullptr) : json(c.error)}});
        }
        csv << ',' << csv_field(notes) << csv_eol;
        rows.push_back({{"parameter", row.parameter}, {"raw", num(row.raw)}, {"cells", cells}});
    }

    json scenarios = json::array();
    for (const auto& s : report.scenarios) {
        json j = {{"factor", s.factor}, {"error", s.error.empty() ? json(nullptr) : json(s.error)}};
        if (s.result) {
            j["accepted"]   = s.result->accepted;
            j["gate_r2"]    = num(s.result->gate_value);
            j["parameters"] = parameters_json(s.result->phi);
        }
        scenarios.push_back(j);
    }
    json doc = {{"country", window.country_id},
                {"label", window.label},
                {"factors", fs},
                {"raw", fit_document(p, report.raw)},
                {"scenarios", scenarios},
                {"rows", rows}};

    const auto dir = out_dir(settings);
    write_output(log, dir, "sensitivity.csv", csv.str());
    write_output(log, dir, "sensitivity.json", doc.dump(2) + "\n");
    out << window.label << ": " << report.rows.size() << " parameters x " << fs.size() << " factors\n";
    return report.raw.accepted ? exit_ok : exit_below_threshold;
}

std::string period_label(const CountryWindow& w)
{
    auto dm = [](Date d) { return std::to_string(d.day()) + "/" + std::to_string(d.month()); };
    return dm(w.train_start) + " to " + dm(w.train_end);
}

int cmd_countries(json& settings, RunLog& log, std::ostream& out)
{
    fill_fit_defaults(settings);
    const auto windows = registry(settings);
    json reg           = json::array();
    for (const auto& w : windows)
        reg.push_back(window_json(w));
    settings["registry"] = reg;
    const auto records   = load_data(settings, log);

    struct Column {
        CountryWindow window;
        std::optional<FitResult> result;
        json document;
        std::string error;
    };
    std::vector<Column> cols;
    for (const auto& w : windows) {
        Column c{w, std::nullopt, nullptr, {}};
        try {
            const auto p = prepare(records, settings, w);
            c.result     = fit(p.build.series, p.demographics, p.cfg);
            c.document   = fit_document(p, *c.result);
        } catch (const Error& e) {
            c.error = e.what();
        }
        cols.push_back(std::move(c));
    }

    std::ostringstream csv;
    csv << "parameter";
    for (const auto& c : cols)
        csv << ',' << csv_field(c.window.label);
    csv << csv_eol << "Period";
    for (const auto& c : cols)
        csv << ',' << csv_field(period_label(c.window));
    csv << csv_eol;
    auto row = [&](const std::string& name, auto&& value) {
        csv << name;
        for (const auto& c : cols)
            csv << ',' << (c.result ? format_double(value(*c.result)) : "");
        csv << csv_eol;
    };
    for (auto name : sensitivity_parameters)
        row(std::string(name), [&](const FitResult& r) { return r.phi.get(name); });
    row("alpha", [](const FitResult& r) { return r.phi.alpha; });
    row("r2_train", [](const FitResult& r) { return r.r2_train.min_channel(); });
    row("r2_test", [](const FitResult& r) { return r.gate_value; });
    csv << "status";
    int accepted = 0;
    int fitted   = 0;
    for (const auto& c : cols) {
        std::string status = c.result ? (c.result->accepted ? "accepted" : "below_threshold") : "error: " + c.error;
        accepted += c.result && c.result->accepted;
        fitted += c.result.has_value();
        csv << ',' << csv_field(status);
    }
    csv << csv_eol;

    json doc = json::array();
    for (const auto& c : cols)
        doc.push_back(c.result ? c.document
                               : json{{"country", c.window.country_id}, {"label", c.window.label}, {"error", c.error}});

    const auto dir = out_dir(settings);
    write_output(log, dir, "countries.csv", csv.str());
    write_output(log, dir, "countries.json", json{{"countries", doc}}.dump(2) + "\n");
    out << accepted << " of " << cols.size() << " countries accepted\n";
    if (accepted > 0)
        return exit_ok;
    if (fitted > 0)
        return exit_below_threshold;
    throw DataError("no country could be fitted");
}

int cmd_fetch(json& settings, RunLog& log, std::ostream& out)
{
    if (!settings.contains("url") || settings["url"].is_null())
        settings["url"] = "https://opendata.ecdc.europa.eu/covid19/casedistribution/csv";
    const auto url = settings["url"].get<std::string>();
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ValidationError("url '" + url + "' has no scheme");
    const auto path_begin = url.find('/', scheme_end + 3);
    const std::string origin = url.substr(0, path_begin);
    const std::string path   = path_begin == std::string::npos ? "/" : url.substr(path_begin);

    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(300);
    auto res = client.Get(path);
    if (!res)
        throw ValidationError("fetch " + url + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw ValidationError("fetch " + url + " returned HTTP " + std::to_string(res->status));
    write_output(log, out_dir(settings), default_data_file, res->body);
    out << "fetched " << res->body.size() << " bytes\n";
    return exit_ok;
}

void write_manifest(const std::string& command, const json& settings, const RunLog& log,
                    const std::string& started, int code)
{
    json outputs = json::array();
    for (const auto& a : log.outputs)
        outputs.push_back({{"path", a.name}, {"sha256", a.sha256}});
    json m = {{"tool", "seaird"},
              {"version", tool_version()},
              {"command", command},
              {"config", settings},
              {"seed", settings.contains("seed") ? settings["seed"] : json(nullptr)},
              {"inputs", log.inputs},
              {"outputs", outputs},
              {"exit_code", code},
              {"started_at", started},
              {"finished_at", utc_now()}};
    const auto dir = out_dir(settings);
    std::ofstream f(dir / "manifest.json", std::ios::binary);
    f << m.dump(2) << '\n';
    if (!f)
        throw ValidationError("cannot write " + (dir / "manifest.json").string());
}

} // namespace

int execute(const std::string& command, const json& given, std::ostream& out, std::ostream& err)
{
    const auto started = utc_now();
    json settings      = given;
    RunLog log;
    try {
        check_keys(settings);
        int code    = exit_ok;
        bool to_dir = true;
        if (command == "simulate")
            code = cmd_simulate(settings, log, out, to_dir);
        else if (command == "fit")
            code = cmd_fit(settings, log, out);
        else if (command == "sensitivity")
            code = cmd_sensitivity(settings, log, out);
        else if (command == "countries")
            code = cmd_countries(settings, log, out);
        else if (command == "fetch")
            code = cmd_fetch(settings, log, out);
        else
            throw ValidationError("unknown command '" + command + "'");
        if (to_dir)
            write_manifest(command, settings, log, started, code);
        if (code == exit_below_threshold)
            err << "warning: best fit is below the acceptance threshold\n";
        return code;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }
}

} // namespace seaird::cli
