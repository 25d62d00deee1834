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
#include "seaird/sensitivity.hpp"
#include "seaird/error.hpp"

#include <cmath>

namespace seaird
{

ObservationSeries inflate_cases(const ObservationSeries& data, double factor)
{
    if (!(factor > -1.0) || !std::isfinite(factor)) {
        throw ValidationError("inflation factor must be > -1, got " + std::to_string(factor));
    }
    ObservationSeries out = data;
    const double scale    = 1.0 + factor;
    for (auto& v : out.values) {
        v.cum_infected *= scale;
    }
    out.case_baseline *= scale;
    return out;
}

double deviation(double raw, double perturbed)
{
    if (raw == 0.0) {
        throw ValidationError("deviation undefined for a zero raw estimate");
    }
    return 100.0 * (perturbed - raw) / raw;
}

SensitivityReport sensitivity_table(const ObservationSeries& data, const DemographicConstants& d,
                                    const FitConfig& cfg, std::span<const double> factors)
{
    SensitivityReport report;
    report.factors.assign(factors.begin(), factors.end());
    for (double f : factors) {
        if (!(f > -1.0)) {
            throw ValidationError("inflation factor must be > -1, got " + std::to_string(f));
        }
    }
    report.raw = fit(data, d, cfg);

    for (double f : factors) {
        SensitivityScenario s;
        s.factor = f;
        try {
            s.result = fit(inflate_cases(data, f), d, cfg);
        }
        catch (const Error& e) {
            s.error = e.what();
        }
        report.scenarios.push_back(std::move(s));
    }

    for (auto name : sensitivity_parameters) {
        SensitivityRow row;
        row.parameter = std::string(name);
        row.raw       = report.raw.phi.get(name);
        for (const auto& s : report.scenarios) {
            SensitivityCell cell;
            cell.factor = s.factor;
            if (!s.result) {
                cell.error = s.error;
            }
            else {
                cell.value = s.result->phi.get(name);
                if (row.raw != 0.0) {
                    cell.deviation_percent = deviation(row.raw, *cell.value);
                }
                else {
                    cell.error = "raw estimate is zero";
                }
            }
            row.cells.push_back(std::move(cell));
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace seaird
