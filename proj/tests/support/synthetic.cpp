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
#include "synthetic.hpp"

#include <seaird/data_io.hpp>

#include <cmath>
#include <random>

namespace seaird::synthetic
{

namespace
{

struct Column {
    const char* id;
    double population;
    double mu, beta, delta, gamma1, gamma2, theta;
};

// Country table estimates; alpha is not reported there and is set to 0.5.
constexpr Column columns[] = {
    {"Brazil", 211049527, 0.0006, 0.7567, 42.3, 0.9980, 0.0682, 0.0698},
    {"France", 67012883, 0.0007, 0.9126, 13.9, 0.9977, 0.1002, 0.1644},
    {"India", 1366417756, 0.0016, 0.8840, 5.3, 0.9962, 0.1034, 0.0330},
    {"Russia", 145872260, 0.0010, 0.9084, 5.1, 0.9976, 0.0404, 0.0097},
    {"South_Africa", 58558267, 0.0001, 0.8551, 16.6, 0.9998, 0.0001, 0.0232},
    {"United_States_of_America", 329064917, 0.0014, 0.7492, 8.5, 0.9993, 0.0012, 0.0640},
};

Generator from_column(const Column& c, Date start, int horizon, double scale = 1.0)
{
    Generator g;
    g.country_id = c.id;
    g.phi        = {0.5, c.beta, c.delta, c.gamma1, c.gamma2, c.mu, c.theta};
    g.population = c.population;
    g.x0.E       = 50000.0 * scale;
    g.x0.I       = 1000.0 * scale;
    g.x0.A       = 500.0 * scale;
    g.x0.R       = 0.0;
    g.x0.D       = 400.0 * scale;
    g.x0.S       = c.population - (g.x0.E + g.x0.I + g.x0.A + g.x0.R + g.x0.D);
    g.start      = start;
    g.horizon    = horizon;
    g.case_baseline = 5000.0;
    return g;
}

} // namespace

Generator brazil_generator()
{
    auto g          = from_column(columns[0], Date(2020, 4, 4), 42);
    g.case_baseline = 0.0;
    return g;
}

std::vector<Generator> country_generators()
{
    std::vector<Generator> out;
    for (const auto& w : window_registry())
        for (const auto& c : columns)
            if (w.country_id == c.id)
                out.push_back(from_column(c, w.train_start, w.test_end - w.train_start, 20.0));
    return out;
}

ObservationSeries generate(const Generator& g)
{
    DemographicConstants d;
    d.population = g.population;
    auto s       = predict_observables(g.phi, g.x0, d, g.horizon, {}, g.start);
    for (auto& v : s.values)
        v.cum_infected += g.case_baseline;
    s.case_baseline = g.case_baseline;
    return s;
}

ObservationSeries with_increment_noise(const ObservationSeries& s, double sigma, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    ObservationSeries out = s;
    double prev_i = s.case_baseline;
    double prev_d = 0.0;
    double acc_i  = s.case_baseline;
    double acc_d  = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double di = s.values[k].cum_infected - prev_i;
        const double dd = s.values[k].cum_deaths - prev_d;
        prev_i          = s.values[k].cum_infected;
        prev_d          = s.values[k].cum_deaths;
        acc_i += di * (1.0 + sigma * z(rng));
        acc_d += dd * (1.0 + sigma * z(rng));
        out.values[k] = {acc_i, acc_d};
    }
    return out;
}

std::vector<DailyRecord> to_records(const Generator& g)
{
    const auto s = generate(g);
    std::vector<DailyRecord> rows;
    auto prev_c = static_cast<std::int64_t>(std::llround(g.case_baseline));
    std::int64_t prev_d = 0;
    rows.push_back({g.start - 1, prev_c, 0, g.country_id, g.population});
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto c = static_cast<std::int64_t>(std::llround(s.values[k].cum_infected));
        const auto d = static_cast<std::int64_t>(std::llround(s.values[k].cum_deaths));
        rows.push_back({g.start + static_cast<int>(k), c - prev_c, d - prev_d, g.country_id, g.population});
        prev_c = c;
        prev_d = d;
    }
    return rows;
}

std::vector<DailyRecord> multi_country_records()
{
    std::vector<DailyRecord> all;
    for (const auto& g : country_generators()) {
        auto rows = to_records(g);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    return all;
}

} // namespace seaird::synthetic
