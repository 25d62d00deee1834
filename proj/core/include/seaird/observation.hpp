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
#ifndef SEAIRD_OBSERVATION_HPP
#define SEAIRD_OBSERVATION_HPP

#include "seaird/date.hpp"
#include "seaird/integrator.hpp"
#include "seaird/model.hpp"

#include <optional>
#include <span>
#include <vector>

namespace seaird
{

/// One day of the observable y(t): cumulative infected and cumulative deaths.
struct ObservationPoint {
    double cum_infected = 0.0;
    double cum_deaths   = 0.0;

    bool operator==(const ObservationPoint&) const = default;
};

/**
 * Dated daily series of cumulative infected and deaths, observed or predicted.
 *
 * `case_baseline` is the part of cum_infected accumulated before start_date
 * (reported history preceding the window). It is zero for model output.
 */
struct ObservationSeries {
    Date start_date;
    std::vector<ObservationPoint> values;
    double case_baseline = 0.0;

    std::size_t size() const
    {
        return values.size();
    }
    Date end_date() const
    {
        return start_date + static_cast<int>(values.size()) - 1;
    }
    /// Throws DataError on negative, nonfinite or decreasing channels.
    void validate() const;

    /// Sub-series over [from, to] inclusive. The case baseline follows the cut.
    ObservationSeries slice(Date from, Date to) const;

    bool operator==(const ObservationSeries&) const = default;
};

struct WeightVector {
    double infected = 1.0;
    double deaths   = 1.0;

    void validate() const;
};

enum class WeightingMode
{
    /// sum_t w_I^2 (I - I_hat)^2 + w_D^2 (D - D_hat)^2
    diagonal,
    /// sum_t (w_I (I - I_hat) + w_D (D - D_hat))^2
    literal,
};

enum class PoolingMode
{
    per_channel,
    pooled,
};

/// Coefficient of determination on both channels. A channel without variance has no value.
struct RSquared {
    std::optional<double> infected;
    std::optional<double> deaths;
    std::optional<double> pooled;

    /// Minimum over the defined channels.
    double min_channel() const;
    /// Gate value for the requested pooling; throws DataError if undefined.
    double gate(PoolingMode mode) const;
};

/// Running sum of the I compartment over daily samples.
std::vector<double> cumulative_infected(const Trajectory& traj);

/// Integrates from x0 and emits (cumulative I, D) for days 0..horizon.
ObservationSeries predict_observables(const ParameterVector& phi, const StateVector& x0,
                                      const DemographicConstants& d, int horizon,
                                      const IntegrationConfig& cfg = {}, Date start_date = {});

/// Weighted least-squares residual of y_hat against y. Series must be date-aligned.
double objective(const ObservationSeries& y, const ObservationSeries& y_hat, const WeightVector& w,
                 WeightingMode mode = WeightingMode::diagonal);

/// R^2 of y_hat against y, per channel and pooled. Throws DataError if both channels lack variance.
RSquared r_squared(const ObservationSeries& y, const ObservationSeries& y_hat);

/// Single-channel R^2 = 1 - SS_res / SS_tot. Throws DataError if y is constant.
double r_squared(std::span<const double> y, std::span<const double> y_hat);

} // namespace seaird

#endif // SEAIRD_OBSERVATION_HPP
