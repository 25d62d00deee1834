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
#include "seaird/data_io.hpp"
#include "seaird/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace seaird
{

namespace
{

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF endings.
std::vector<CsvRow> read_rows(std::string_view text)
{
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string field;
    bool quoted       = false;
    bool row_has_data = false;
    std::size_t line  = 1;
    row.line          = 1;

    auto end_field = [&] {
        row.fields.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        if (row_has_data || row.fields.size() > 1 || !row.fields.front().empty()) {
            rows.push_back(std::move(row));
        }
        row          = CsvRow{};
        row_has_data = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                }
                else {
                    quoted = false;
                }
            }
            else {
                if (ch == '\n') {
                    ++line;
                }
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
        case '"':
            quoted       = true;
            row_has_data = true;
            break;
        case ',':
            end_field();
            row_has_data = true;
            break;
        case '\r':
            break;
        case '\n':
            end_row();
            ++line;
            row.line = line;
            break;
        default:
            field.push_back(ch);
        }
    }
    if (quoted) {
        throw DataError("unterminated quoted field starting on line " + std::to_string(row.line));
    }
    if (!field.empty() || !row.fields.empty() || row_has_data) {
        end_row();
    }
    return rows;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

template <class T>
bool parse_number(std::string_view s, T& out)
{
    const auto* last = s.data() + s.size();
    auto [ptr, ec]   = std::from_chars(s.data(), last, out);
    return !s.empty() && ec == std::errc{} && ptr == last;
}

std::string quote_if_needed(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

std::string format_population(double p)
{
    char buf[32];
    if (p == std::floor(p) && std::abs(p) < 1e15) {
        std::snprintf(buf, sizeof buf, "%.0f", p);
    }
    else {
        std::snprintf(buf, sizeof buf, "%.17g", p);
    }
    return buf;
}

} // namespace

void CountryWindow::validate() const
{
    if (country_id.empty()) {
        throw ValidationError("country id must not be empty");
    }
    if (!(train_start < train_end && train_end < test_end)) {
        throw ValidationError("window for " + country_id + " needs train_start < train_end < test_end");
    }
    if (population && !(*population > 0.0)) {
        throw ValidationError("population override for " + country_id + " must be > 0");
    }
}

std::vector<DailyRecord> parse_daily_csv(std::string_view text)
{
    const auto rows = read_rows(text);
    if (rows.empty()) {
        throw DataError("empty CSV: no header row");
    }

    const auto& header = rows.front().fields;
    auto column        = [&](std::initializer_list<std::string_view> names) -> std::optional<std::size_t> {
        for (auto name : names) {
            for (std::size_t i = 0; i < header.size(); ++i) {
                if (trim(header[i]) == name) {
                    return i;
                }
            }
        }
        return std::nullopt;
    };
    const auto date_col    = column({"dateRep"});
    const auto cases_col   = column({"cases"});
    const auto deaths_col  = column({"deaths"});
    const auto country_col = column({"countriesAndTerritories"});
    const auto pop_col     = column({"popData2019", "popData2020"});
    for (auto [col, name] : {std::pair{date_col, "dateRep"}, std::pair{cases_col, "cases"},
                             std::pair{deaths_col, "deaths"}, std::pair{country_col, "countriesAndTerritories"},
                             std::pair{pop_col, "popData2019/popData2020"}}) {
        if (!col) {
            throw DataError(std::string("missing required column ") + name);
        }
    }
    const std::size_t needed = std::max({*date_col, *cases_col, *deaths_col, *country_col, *pop_col}) + 1;

    std::vector<DailyRecord> records;
    records.reserve(rows.size() - 1);
    std::vector<std::string> problems;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto fail       = [&](const std::string& what) {
            problems.push_back("line " + std::to_string(row.line) + ": " + what);
        };
        if (row.fields.size() < needed) {
            fail("expected at least " + std::to_string(needed) + " fields, found " +
                 std::to_string(row.fields.size()));
            continue;
        }
        DailyRecord rec;
        try {
            rec.date = Date::from_dmy(trim(row.fields[*date_col]));
        }
        catch (const ValidationError& e) {
            fail(e.what());
            continue;
        }
        if (!parse_number(trim(row.fields[*cases_col]), rec.cases)) {
            fail("cases '" + row.fields[*cases_col] + "' is not an integer");
            continue;
        }
        if (!parse_number(trim(row.fields[*deaths_col]), rec.deaths)) {
            fail("deaths '" + row.fields[*deaths_col] + "' is not an integer");
            continue;
        }
        rec.country_id = trim(row.fields[*country_col]);
        if (rec.country_id.empty()) {
            fail("empty countriesAndTerritories");
            continue;
        }
        const auto pop = trim(row.fields[*pop_col]);
        if (!pop.empty() && (!parse_number(std::string_view(pop), rec.population) || rec.population < 0.0)) {
            fail("population '" + pop + "' is not a number");
            continue;
        }
        records.push_back(std::move(rec));
    }
    if (!problems.empty()) {
        std::string msg = std::to_string(problems.size()) + " malformed row(s):";
        for (std::size_t i = 0; i < problems.size() && i < 20; ++i) {
            msg += "\n  " + problems[i];
        }
        throw DataError(msg);
    }
    return records;
}

std::vector<DailyRecord> read_daily_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_daily_csv(buf.str());
}

std::string serialize_daily_csv(std::span<const DailyRecord> records)
{
    std::string out = "dateRep,day,month,year,cases,deaths,countriesAndTerritories,popData2019\n";
    for (const auto& r : records) {
        out += r.date.dmy() + "," + std::to_string(r.date.day()) + "," + std::to_string(r.date.month()) + "," +
               std::to_string(r.date.year()) + "," + std::to_string(r.cases) + "," + std::to_string(r.deaths) +
               "," + quote_if_needed(r.country_id) + "," + (r.population > 0.0 ? format_population(r.population) : "") +
               "\n";
    }
    return out;
}

SeriesBuild build_series(std::span<const DailyRecord> records, const CountryWindow& window, BaselinePolicy policy)
{
    window.validate();
    std::map<Date, const DailyRecord*> by_date;
    for (const auto& r : records) {
        if (r.country_id != window.country_id) {
            continue;
        }
        auto [it, inserted] = by_date.emplace(r.date, &r);
        if (!inserted && (it->second->cases != r.cases || it->second->deaths != r.deaths)) {
            throw DataError("conflicting records for " + window.country_id + " on " + r.date.iso());
        }
    }
    if (by_date.empty()) {
        throw DataError("no records for country '" + window.country_id + "'");
    }

    std::vector<std::string> missing;
    for (Date d = window.train_start; d <= window.test_end; ++d) {
        if (!by_date.contains(d)) {
            missing.push_back(d.iso());
        }
    }
    if (!missing.empty()) {
        std::string msg = window.country_id + ": " + std::to_string(missing.size()) + " missing day(s):";
        for (std::size_t i = 0; i < missing.size() && i < 10; ++i) {
            msg += " " + missing[i];
        }
        if (missing.size() > 10) {
            msg += " ...";
        }
        throw DataError(msg);
    }

    SeriesBuild out;
    double prior_cases = 0.0, prior_deaths = 0.0;
    if (policy == BaselinePolicy::include_prior) {
        for (auto it = by_date.begin(); it != by_date.end() && it->first < window.train_start; ++it) {
            prior_cases += static_cast<double>(it->second->cases);
            prior_deaths += static_cast<double>(it->second->deaths);
        }
    }
    out.series.start_date    = window.train_start;
    out.series.case_baseline = std::max(prior_cases, 0.0);

    double raw_cases = prior_cases, raw_deaths = prior_deaths;
    double max_cases = std::max(prior_cases, 0.0), max_deaths = std::max(prior_deaths, 0.0);
    for (auto it = by_date.find(window.train_start); it != by_date.end() && it->first <= window.test_end; ++it) {
        const auto& rec = *it->second;
        raw_cases += static_cast<double>(rec.cases);
        raw_deaths += static_cast<double>(rec.deaths);
        if (raw_cases < max_cases) {
            ++out.case_repairs;
        }
        if (raw_deaths < max_deaths) {
            ++out.death_repairs;
        }
        max_cases  = std::max(max_cases, raw_cases);
        max_deaths = std::max(max_deaths, raw_deaths);
        out.series.values.push_back({max_cases, max_deaths});
        if (rec.population > 0.0) {
            out.population = rec.population;
        }
    }
    if (window.population) {
        out.population = *window.population;
    }
    if (!(out.population > 0.0)) {
        throw DataError("no population recorded for " + window.country_id);
    }
    return out;
}

CountryWindow make_window(std::string country_id, std::string label, Date train_start, Date train_end,
                          std::optional<Date> test_end)
{
    CountryWindow w;
    w.country_id  = std::move(country_id);
    w.label       = std::move(label);
    w.train_start = train_start;
    w.train_end   = train_end;
    w.test_end    = test_end.value_or(train_end + (train_end - train_start));
    w.validate();
    return w;
}

std::vector<CountryWindow> window_registry()
{
    return {
        make_window("Brazil", "Brazil", Date{2020, 4, 4}, Date{2020, 4, 25}, Date{2020, 5, 16}),
        make_window("France", "France", Date{2020, 3, 26}, Date{2020, 4, 16}),
        make_window("India", "India", Date{2020, 4, 4}, Date{2020, 4, 25}),
        make_window("Russia", "Russia", Date{2020, 4, 15}, Date{2020, 5, 5}),
        make_window("South_Africa", "South Africa", Date{2020, 4, 4}, Date{2020, 4, 25}),
        make_window("United_States_of_America", "United States", Date{2020, 4, 4}, Date{2020, 4, 25}),
    };
}

std::optional<CountryWindow> find_window(std::string_view country)
{
    for (auto& w : window_registry()) {
        if (w.country_id == country || w.label == country) {
            return w;
        }
    }
    return std::nullopt;
}

} // namespace seaird
