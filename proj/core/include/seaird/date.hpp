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
#ifndef SEAIRD_DATE_HPP
#define SEAIRD_DATE_HPP

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace seaird
{

/// Calendar day (proleptic Gregorian), stored as days since 1970-01-01.
class Date
{
public:
    constexpr Date() = default;
    constexpr explicit Date(std::chrono::sys_days days)
        : m_days(days)
    {
    }
    Date(int year, unsigned month, unsigned day);

    /// Parses "YYYY-MM-DD". Throws ValidationError on malformed input.
    static Date from_iso(std::string_view text);
    /// Parses the ECDC "DD/MM/YYYY" form. Throws ValidationError on malformed input.
    static Date from_dmy(std::string_view text);

    std::string iso() const;
    std::string dmy() const;

    int year() const;
    unsigned month() const;
    unsigned day() const;

    constexpr std::chrono::sys_days sys_days() const
    {
        return m_days;
    }

    constexpr Date operator+(int days) const
    {
        return Date{m_days + std::chrono::days{days}};
    }
    constexpr Date operator-(int days) const
    {
        return Date{m_days - std::chrono::days{days}};
    }
    /// Signed number of days from `other` to `*this`.
    constexpr int operator-(const Date& other) const
    {
        return static_cast<int>((m_days - other.m_days).count());
    }
    constexpr Date& operator++()
    {
        m_days += std::chrono::days{1};
        return *this;
    }

    constexpr auto operator<=>(const Date&) const = default;

private:
    std::chrono::sys_days m_days{};
};

} // namespace seaird

#endif // SEAIRD_DATE_HPP
