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
#include "seaird/observation.hpp"
#include "seaird/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace seaird
{

namespace
{

void require_aligned(const ObservationSeries& y, const ObservationSeries& y_hat)
{
    if (y.size() != y_hat.size()) {
        throw DataError("series length mismatch: " + std::to_string(y.size()) + " vs " +
                        std::to_string(y_hat.size()));
    }
    if (y.start_date != y_hat.start_date) {
        throw DataError("series start mismatch: " + y.start_date.iso() + " vs " + y_hat.start_date.iso());
    }
    if (y.size() == 0) {
        throw DataError("empty series");
    }
}

struct SumsOfSquares {
    double residual = 0.0;
    double total    = 0.0;
};

SumsOfSquares sums_of_squares(std::span<const double> y, std::span<const double> y_hat)
{
    double mean = 0.0;
    for (double v : y) {
        mean += v;
    }
    mean /= static_cast<double>(y.size());
    SumsOfSquares ss;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss.residual += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
        ss.total += (y[i] - mean) * (y[i] - mean);
    }
    return ss;
}

} // namespace

void ObservationSeries::validate() const
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& v = values[i];
        if (!std::isfinite(v.cum_infected) || !std::isfinite(v.cum_deaths) || v.cum_infected < 0.0 ||
            v.cum_deaths < 0.0) {
            throw DataError("invalid observation on " + (start_date + static_cast<int>(i)).iso());
        }
        if (i > 0 && (v.cum_infected < values[i - 1].cum_infected || v.cum_deaths < values[i - 1].cum_deaths)) {
            throw DataError("cumulative series decreases on " + (start_date + static_cast<int>(i)).iso());
        }
    }
    if (!std::isfinite(case_baseline) || case_baseline < 0.0) {
        throw DataError("case baseline must be finite and >= 0");
    }
}

ObservationSeries ObservationSeries::slice(Date from, Date to) const
{
    if (from > to || from < start_date || to > end_date() || values.empty()) {
        throw DataError("window " + from.iso() + ".." + to.iso() + " is not covered by data spanning " +
                        start_date.iso() + ".." + (values.empty() ? start_date : end_date()).iso());
    }
    const auto first = static_cast<std::size_t>(from - start_date);
    const auto last  = static_cast<std::size_t>(to - start_date);
    ObservationSeries out;
    out.start_date    = from;
    out.values        = {values.begin() + static_cast<std::ptrdiff_t>(first),
                         values.begin() + static_cast<std::ptrdiff_t>(last) + 1};
    out.case_baseline = first == 0 ? case_baseline : values[first - 1].cum_infected;
    return out;
}

void WeightVector::validate() const
{
    if (!std::isfinite(infected) || !std::isfinite(deaths) || infected < 0.0 || deaths < 0.0) {
        throw ValidationError("weights must be finite and >= 0");
    }
    if (infected == 0.0 && deaths == 0.0) {
        throw ValidationError("weights must not both be zero");
    }
}

double RSquared::min_channel() const
{
    if (!infected && !deaths) {
        throw DataError("R^2 undefined: no channel has variance");
    }
    if (infected && deaths) {
        return std::min(*infected, *deaths);
    }
    return infected ? *infected : *deaths;
}

double RSquared::gate(PoolingMode mode) const
{
    if (mode == PoolingMode::pooled) {
        if (!pooled) {
            throw DataError("pooled R^2 undefined: test set has no variance");
        }
        return *pooled;
    }
    return min_channel();
}

std::vector<double> cumulative_infected(const Trajectory& traj)
{
    std::vector<double> out;
    out.reserve(traj.states.size());
    double sum = 0.0;
    for (const auto& x : traj.states) {
        sum += x.I;
        out.push_back(sum);
    }
    return out;
}

ObservationSeries predict_observables(const ParameterVector& phi, const StateVector& x0,
                                      const DemographicConstants& d, int horizon, const IntegrationConfig& cfg,
                                      Date start_date)
{
    const auto traj = integrate(x0, phi, d, horizon, cfg);
    const auto cum  = cumulative_infected(traj);
    ObservationSeries out;
    out.start_date = start_date;
    out.values.reserve(cum.size());
    for (std::size_t i = 0; i < cum.size(); ++i) {
        out.values.push_back({cum[i], traj.states[i].D});
    }
    return out;
}

double objective(const ObservationSeries& y, const ObservationSeries& y_hat, const WeightVector& w,
                 WeightingMode mode)
{
    require_aligned(y, y_hat);
    double sum = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        const double ri = w.infected * (y.values[t].cum_infected - y_hat.values[t].cum_infected);
        const double rd = w.deaths * (y.values[t].cum_deaths - y_hat.values[t].cum_deaths);
        sum += mode == WeightingMode::diagonal ? ri * ri + rd * rd : (ri + rd) * (ri + rd);
    }
    return sum;
}

double r_squared(std::span<const double> y, std::span<const double> y_hat)
{
    if (y.size() != y_hat.size() || y.empty()) {
        throw DataError("R^2 needs equal-length, non-empty series");
    }
    const auto ss = sums_of_squares(y, y_hat);
    if (!(ss.total > 0.0)) {
        throw DataError("R^2 undefined: observed series is constant");
    }
    return 1.0 - ss.residual / ss.total;
}

RSquared r_squared(const ObservationSeries& y, const ObservationSeries& y_hat)
{
    require_aligned(y, y_hat);
    std::vector<double> yi, yd, hi, hd;
    for (std::size_t t = 0; t < y.size(); ++t) {
        yi.push_back(y.values[t].cum_infected);
        yd.push_back(y.values[t].cum_deaths);
        hi.push_back(y_hat.values[t].cum_infected);
        hd.push_back(y_hat.values[t].cum_deaths);
    }
    const auto ssi = sums_of_squares(yi, hi);
    const auto ssd = sums_of_squares(yd, hd);

    RSquared r2;
    if (ssi.total > 0.0) {
        r2.infected = 1.0 - ssi.residual / ssi.total;
    }
    if (ssd.total > 0.0) {
        r2.deaths = 1.0 - ssd.residual / ssd.total;
    }
    if (ssi.total + ssd.total > 0.0) {
        r2.pooled = 1.0 - (ssi.residual + ssd.residual) / (ssi.total + ssd.total);
    }
    if (!r2.pooled) {
        throw DataError("R^2 undefined: test set has no variance in either channel");
    }
    return r2;
}

} // namespace seaird
