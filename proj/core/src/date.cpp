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
#include "seaird/date.hpp"
#include "seaird/error.hpp"

#include <charconv>
#include <cstdio>

namespace seaird
{

namespace
{

int parse_int(std::string_view field, std::string_view whole)
{
    int value        = 0;
    const auto* last = field.data() + field.size();
    auto [ptr, ec]   = std::from_chars(field.data(), last, value);
    if (field.empty() || ec != std::errc{} || ptr != last) {
        throw ValidationError("malformed date '" + std::string(whole) + "'");
    }
    return value;
}

std::chrono::sys_days make_days(int year, unsigned month, unsigned day, std::string_view whole)
{
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) {
        throw ValidationError("invalid calendar date '" + std::string(whole) + "'");
    }
    return std::chrono::sys_days{ymd};
}

} // namespace

Date::Date(int year, unsigned month, unsigned day)
    : m_days(make_days(year, month, day, std::to_string(year) + "-" + std::to_string(month) + "-" +
                                             std::to_string(day)))
{
}

Date Date::from_iso(std::string_view text)
{
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw ValidationError("expected YYYY-MM-DD, got '" + std::string(text) + "'");
    }
    const int y = parse_int(text.substr(0, 4), text);
    const int m = parse_int(text.substr(5, 2), text);
    const int d = parse_int(text.substr(8, 2), text);
    return Date{make_days(y, static_cast<unsigned>(m), static_cast<unsigned>(d), text)};
}

Date Date::from_dmy(std::string_view text)
{
    if (text.size() != 10 || text[2] != '/' || text[5] != '/') {
        throw ValidationError("expected DD/MM/YYYY, got '" + std::string(text) + "'");
    }
    const int d = parse_int(text.substr(0, 2), text);
    const int m = parse_int(text.substr(3, 2), text);
    const int y = parse_int(text.substr(6, 4), text);
    return Date{make_days(y, static_cast<unsigned>(m), static_cast<unsigned>(d), text)};
}

int Date::year() const
{
    return static_cast<int>(std::chrono::year_month_day{m_days}.year());
}

unsigned Date::month() const
{
    return static_cast<unsigned>(std::chrono::year_month_day{m_days}.month());
}

unsigned Date::day() const
{
    return static_cast<unsigned>(std::chrono::year_month_day{m_days}.day());
}

std::string Date::iso() const
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
    return buf;
}

std::string Date::dmy() const
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02u/%02u/%04d", day(), month(), year());
    return buf;
}

} // namespace seaird
