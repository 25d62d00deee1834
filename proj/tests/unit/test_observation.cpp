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
#include <seaird/error.hpp>
#include <seaird/observation.hpp>

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace seaird;

namespace
{

Trajectory with_infected(std::vector<double> infected)
{
    Trajectory t;
    for (std::size_t k = 0; k < infected.size(); ++k) {
        t.days.push_back(static_cast<int>(k));
        t.states.push_back({0, 0, infected[k], 0, 0, 0});
    }
    return t;
}

ObservationSeries series(Date start, std::vector<ObservationPoint> v)
{
    return {start, std::move(v), 0.0};
}

// Textbook coefficient of determination, independent of the library path.
double oracle_r2(const std::vector<double>& y, const std::vector<double>& yh)
{
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    double res = 0.0;
    double tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        res += (y[i] - yh[i]) * (y[i] - yh[i]);
        tot += (y[i] - mean) * (y[i] - mean);
    }
    return 1.0 - res / tot;
}

const Date day0(2020, 4, 4);

} // namespace

TEST(CumulativeInfected, PrefixSums)
{
    EXPECT_EQ(cumulative_infected(with_infected({0, 0, 0})), (std::vector<double>{0, 0, 0}));
    EXPECT_EQ(cumulative_infected(with_infected({1, 2, 3})), (std::vector<double>{1, 3, 6}));
    EXPECT_EQ(cumulative_infected(with_infected({5})), (std::vector<double>{5}));
}

TEST(PredictObservables, NoEpidemicIsConstant)
{
    ParameterVector p{.alpha = 0.5, .beta = 0.8, .delta = 3, .gamma1 = 0.1, .gamma2 = 0.1, .mu = 0.3, .theta = 0.05};
    const auto y = predict_observables(p, {1000, 0, 0, 0, 0, 12}, {0.0, 1012.0}, 20, {}, day0);
    ASSERT_EQ(y.size(), 21u);
    EXPECT_EQ(y.start_date, day0);
    for (const auto& v : y.values)
        EXPECT_EQ(v, (ObservationPoint{0.0, 12.0}));
}

TEST(PredictObservables, ZeroFatalityHasNoDeaths)
{
    ParameterVector p{.alpha = 0.5, .beta = 0.3, .delta = 1, .gamma1 = 0.1, .gamma2 = 0.1, .mu = 0.5, .theta = 0.0};
    const auto y = predict_observables(p, {999, 0, 1, 0, 0, 0}, {0.0, 1000.0}, 50);
    for (const auto& v : y.values)
        EXPECT_EQ(v.cum_deaths, 0.0);
}

TEST(PredictObservables, ChannelsNonDecreasingOnRandomDraws)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const ParameterVector p{0.01 + 0.98 * u(rng), u(rng), 80 * u(rng), u(rng), u(rng), u(rng), 0.3 * u(rng)};
        const StateVector x0{1e5, 1e3 * u(rng), 1 + 100 * u(rng), 100 * u(rng), 0, 5 * u(rng)};
        const auto y = predict_observables(p, x0, {0.0, x0.total()}, 42);
        for (std::size_t k = 1; k < y.size(); ++k) {
            EXPECT_GE(y.values[k].cum_infected, y.values[k - 1].cum_infected);
            EXPECT_GE(y.values[k].cum_deaths, y.values[k - 1].cum_deaths);
        }
    }
}

TEST(Objective, ZeroForIdenticalSeries)
{
    const auto y = series(day0, {{10, 1}, {20, 2}, {35, 4}});
    EXPECT_EQ(objective(y, y, {0.3, 7.0}), 0.0);
    EXPECT_EQ(objective(y, y, {0.3, 7.0}, WeightingMode::literal), 0.0);
}

TEST(Objective, HandEvaluatedResiduals)
{
    const auto y = series(day0, {{10, 10}});
    EXPECT_DOUBLE_EQ(objective(y, series(day0, {{7, 6}}), {1, 1}), 25.0);
    const auto yh = series(day0, {{7, 13}});
    EXPECT_DOUBLE_EQ(objective(y, yh, {1, 1}, WeightingMode::literal), 0.0);
    EXPECT_DOUBLE_EQ(objective(y, yh, {1, 1}, WeightingMode::diagonal), 18.0);
}

TEST(Objective, WeightsScaleResiduals)
{
    const auto y = series(day0, {{10, 10}, {12, 11}});
    const auto yh = series(day0, {{9, 12}, {12, 10}});
    // diagonal: sum wI^2 eI^2 + wD^2 eD^2
    EXPECT_DOUBLE_EQ(objective(y, yh, {2, 0.5}), 4 * 1 + 0.25 * 4 + 0 + 0.25 * 1);
}

TEST(Objective, RejectsMisalignedSeries)
{
    const auto y = series(day0, {{1, 1}, {2, 2}});
    EXPECT_THROW(objective(y, series(day0, {{1, 1}}), {}), DataError);
    EXPECT_THROW(objective(y, series(day0 + 1, {{1, 1}, {2, 2}}), {}), DataError);
}

TEST(RSquared, HandEvaluated)
{
    const std::vector<double> y{1, 2, 3};
    const std::vector<double> yh{1, 2, 4};
    EXPECT_DOUBLE_EQ(r_squared(y, yh), 0.5);
    EXPECT_DOUBLE_EQ(r_squared(y, yh), oracle_r2(y, yh));
}

TEST(RSquared, PerfectAndMeanPredictors)
{
    const auto y = series(day0, {{1, 0}, {4, 1}, {9, 3}, {16, 4}});
    const auto perfect = r_squared(y, y);
    EXPECT_EQ(*perfect.infected, 1.0);
    EXPECT_EQ(*perfect.deaths, 1.0);
    EXPECT_EQ(*perfect.pooled, 1.0);
    EXPECT_EQ(perfect.gate(PoolingMode::per_channel), 1.0);
    EXPECT_EQ(perfect.gate(PoolingMode::pooled), 1.0);

    const auto mean = series(day0, {{7.5, 2}, {7.5, 2}, {7.5, 2}, {7.5, 2}});
    const auto r    = r_squared(y, mean);
    EXPECT_DOUBLE_EQ(*r.infected, 0.0);
    EXPECT_DOUBLE_EQ(*r.deaths, 0.0);
}

TEST(RSquared, MatchesOracleOnRandomSeries)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(15), b(15);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = 100 * u(rng);
            b[i] = a[i] + 10 * (u(rng) - 0.5);
        }
        EXPECT_NEAR(r_squared(a, b), oracle_r2(a, b), 1e-12);
    }
}

TEST(RSquared, ConstantChannelHasNoValue)
{
    const auto y  = series(day0, {{1, 5}, {2, 5}, {3, 5}});
    const auto yh = series(day0, {{1, 5}, {2, 5}, {4, 5}});
    const auto r  = r_squared(y, yh);
    EXPECT_TRUE(r.infected.has_value());
    EXPECT_FALSE(r.deaths.has_value());
    EXPECT_DOUBLE_EQ(r.min_channel(), 0.5);
    EXPECT_THROW(r_squared(std::vector<double>{2, 2}, std::vector<double>{1, 3}), DataError);
    const auto flat = series(day0, {{0, 0}, {0, 0}});
    EXPECT_THROW(r_squared(flat, flat), DataError);
}

TEST(ObservationSeries, SliceMovesBaseline)
{
    ObservationSeries s{day0, {{10, 1}, {15, 1}, {22, 2}, {30, 3}}, 4.0};
    const auto tail = s.slice(day0 + 2, day0 + 3);
    EXPECT_EQ(tail.start_date, day0 + 2);
    ASSERT_EQ(tail.size(), 2u);
    EXPECT_EQ(tail.values[0].cum_infected, 22.0);
    EXPECT_EQ(tail.case_baseline, 15.0);
    EXPECT_EQ(s.slice(day0, day0 + 1).case_baseline, 4.0);
    EXPECT_THROW((void)s.slice(day0 + 2, day0 + 9), DataError);
}

TEST(ObservationSeries, ValidateRejectsDecrease)
{
    EXPECT_THROW(series(day0, {{3, 1}, {2, 1}}).validate(), DataError);
    EXPECT_THROW(series(day0, {{3, -1}}).validate(), DataError);
    EXPECT_NO_THROW(series(day0, {{3, 1}, {3, 1}}).validate());
}
