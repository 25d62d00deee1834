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
#ifndef SEAIRD_DATA_IO_HPP
#define SEAIRD_DATA_IO_HPP

#include "seaird/date.hpp"
#include "seaird/observation.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seaird
{

/// One row of an ECDC-style daily report. Counts are signed: feeds carry corrections.
struct DailyRecord {
    Date date;
    std::int64_t cases  = 0;
    std::int64_t deaths = 0;
    std::string country_id;
    double population = 0.0; ///< 0 when the feed leaves it blank

    bool operator==(const DailyRecord&) const = default;
};

/// Stable estimation window for one country.
struct CountryWindow {
    std::string country_id; ///< as spelled in countriesAndTerritories
    std::string label;      ///< display name
    Date train_start;
    Date train_end;
    Date test_end;
    std::optional<double> population; ///< overrides the CSV population column

    void validate() const;
};

enum class BaselinePolicy
{
    /// cumulative counts at train_start include every reported day before it
    include_prior,
    /// cumulative counts start from zero on train_start
    exclude_prior,
};

struct SeriesBuild {
    ObservationSeries series;
    int case_repairs  = 0; ///< days floored to the running maximum
    int death_repairs = 0;
    double population = 0.0;
};

/**
 * Parses ECDC daily CSV text. Required columns: dateRep (DD/MM/YYYY), cases,
 * deaths, countriesAndTerritories and popData2019 or popData2020; others are
 * ignored. Malformed rows are collected and reported together, with line
 * numbers, in a single DataError.
 */
std::vector<DailyRecord> parse_daily_csv(std::string_view text);

/// Reads and parses a file. Throws DataError if it cannot be opened.
std::vector<DailyRecord> read_daily_csv(const std::filesystem::path& path);

/// Canonical layout: dateRep,day,month,year,cases,deaths,countriesAndTerritories,popData2019.
std::string serialize_daily_csv(std::span<const DailyRecord> records);

/**
 * Cumulative observation series for `window.country_id` over
 * [train_start, test_end]. Negative corrections are folded into the sums and
 * the result is floored at its running maximum; floored days are counted.
 * Throws DataError naming missing days.
 */
SeriesBuild build_series(std::span<const DailyRecord> records, const CountryWindow& window,
                         BaselinePolicy policy = BaselinePolicy::include_prior);

/// Window with the test period defaulting to the length of the training period.
CountryWindow make_window(std::string country_id, std::string label, Date train_start, Date train_end,
                          std::optional<Date> test_end = std::nullopt);

/// Built-in stable windows for Brazil, France, India, Russia, South Africa and the USA.
std::vector<CountryWindow> window_registry();

std::optional<CountryWindow> find_window(std::string_view country);

} // namespace seaird

#endif // SEAIRD_DATA_IO_HPP
