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
#ifndef SEAIRD_SENSITIVITY_HPP
#define SEAIRD_SENSITIVITY_HPP

#include "seaird/estimator.hpp"
#include "seaird/observation.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seaird
{

/// Rows of the undercount table, in display order.
inline constexpr std::array<std::string_view, 6> sensitivity_parameters{"mu",     "beta",   "delta",
                                                                         "gamma1", "gamma2", "theta"};

inline constexpr std::array<double, 3> default_undercount_factors{0.05, 0.10, 0.20};

struct SensitivityCell {
    double factor = 0.0;
    std::optional<double> value;
    std::optional<double> deviation_percent;
    std::string error; ///< set when the scenario fit failed or the deviation is undefined
};

struct SensitivityRow {
    std::string parameter;
    double raw = 0.0;
    std::vector<SensitivityCell> cells; ///< one per factor
};

struct SensitivityScenario {
    double factor = 0.0;
    std::optional<FitResult> result;
    std::string error;
};

struct SensitivityReport {
    std::vector<double> factors;
    FitResult raw;
    std::vector<SensitivityScenario> scenarios;
    std::vector<SensitivityRow> rows;
};

/// Scales the cumulative infected channel (and its baseline) by 1 + factor. Deaths are untouched.
ObservationSeries inflate_cases(const ObservationSeries& data, double factor);

/// Signed percent change 100 (perturbed - raw) / raw. Throws ValidationError for raw == 0.
double deviation(double raw, double perturbed);

/**
 * Re-fits the data with cases inflated by each factor, using the same
 * configuration and seed, and tabulates the change of every parameter.
 * A failing scenario is recorded in its cells; a failing raw fit throws.
 */
SensitivityReport sensitivity_table(const ObservationSeries& data, const DemographicConstants& d,
                                    const FitConfig& cfg, std::span<const double> factors);

} // namespace seaird

#endif // SEAIRD_SENSITIVITY_HPP
