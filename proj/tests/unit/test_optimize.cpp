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
#include <seaird/optimize.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace seaird;

TEST(Minimize, ParabolaOnUnitInterval)
{
    const std::vector<Interval> box{{0.0, 1.0}};
    for (double start : {0.0, 0.05, 0.5, 0.97, 1.0}) {
        const auto r = minimize([](std::span<const double> x) { return (x[0] - 0.3) * (x[0] - 0.3); },
                                std::vector<double>{start}, box);
        EXPECT_NEAR(r.x[0], 0.3, 1e-4) << "start " << start;
    }
}

TEST(Minimize, FlatObjectiveReturnsStart)
{
    const std::vector<Interval> box{{0.0, 2.0}, {-1.0, 1.0}};
    const std::vector<double> start{0.7, 0.2};
    const auto r = minimize([](std::span<const double>) { return 3.5; }, start, box);
    EXPECT_EQ(r.value, 3.5);
    EXPECT_NEAR(r.x[0], 0.7, 1e-12);
    EXPECT_NEAR(r.x[1], 0.2, 1e-12);
}

TEST(Minimize, RosenbrockInBox)
{
    const std::vector<Interval> box{{0.0, 2.0}, {0.0, 2.0}};
    NelderMeadSettings s;
    s.max_evaluations = 5000;
    const auto r = minimize(
        [](std::span<const double> x) {
            return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
        },
        std::vector<double>{0.5, 0.5}, box, s);
    EXPECT_LT(r.value, 1e-3);
    EXPECT_NEAR(r.x[0], 1.0, 0.05);
    EXPECT_NEAR(r.x[1], 1.0, 0.05);
    EXPECT_LE(r.evaluations, 5000u + 2 * box.size() + 2);
}

TEST(Minimize, NeverEvaluatesOutsideBox)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Interval> box;
        std::vector<double> start;
        std::vector<double> target;
        for (int i = 0; i < 4; ++i) {
            const double a = u(rng);
            const double b = a + 0.1 + std::abs(u(rng));
            box.push_back({a, b});
            start.push_back(a + 0.5 * (b - a));
            target.push_back(u(rng) * 2);
        }
        auto f = [&](std::span<const double> x) {
            double v = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                v += (x[i] - target[i]) * (x[i] - target[i]);
            return v;
        };
        bool outside = false;
        const auto r = minimize(
            [&](std::span<const double> x) {
                for (std::size_t i = 0; i < x.size(); ++i)
                    outside = outside || x[i] < box[i].lo || x[i] > box[i].hi;
                return f(x);
            },
            start, box);
        EXPECT_FALSE(outside);
        EXPECT_LE(r.value, f(start));
        for (std::size_t i = 0; i < box.size(); ++i)
            EXPECT_TRUE(box[i].contains(r.x[i]));
    }
}

TEST(Minimize, ReachesMinimumOnTheBound)
{
    const std::vector<Interval> box{{0.0, 1.0}, {-2.0, 3.0}, {1.0, 1.5}};
    const std::vector<double> target{-0.5, 4.0, 1.2};
    const auto r = minimize(
        [&](std::span<const double> x) {
            double v = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                v += (x[i] - target[i]) * (x[i] - target[i]);
            return v;
        },
        std::vector<double>{0.5, 0.5, 1.25}, box);
    EXPECT_NEAR(r.x[0], 0.0, 1e-3);
    EXPECT_NEAR(r.x[1], 3.0, 1e-3);
    EXPECT_NEAR(r.x[2], 1.2, 1e-4);
}

TEST(Minimize, FixedCoordinatesStayFixed)
{
    const std::vector<Interval> box{{0.0, 1.0}, {0.25, 0.25}};
    const auto r = minimize(
        [](std::span<const double> x) { return std::pow(x[0] - 0.6, 2) + std::pow(x[1] - 0.9, 2); },
        std::vector<double>{0.1, 0.25}, box);
    EXPECT_EQ(r.x[1], 0.25);
    EXPECT_NEAR(r.x[0], 0.6, 1e-4);
}

TEST(Minimize, NonfiniteStartThrows)
{
    const std::vector<Interval> box{{0.0, 1.0}};
    EXPECT_THROW(minimize([](std::span<const double>) { return std::numeric_limits<double>::infinity(); },
                          std::vector<double>{0.5}, box),
                 NumericalError);
}

TEST(Minimize, RejectsBadArguments)
{
    const std::vector<Interval> box{{1.0, 0.0}};
    auto f = [](std::span<const double> x) { return x[0]; };
    EXPECT_THROW(minimize(f, std::vector<double>{0.5}, box), ValidationError);
    const std::vector<Interval> ok{{0.0, 1.0}};
    EXPECT_THROW(minimize(f, std::vector<double>{0.5, 0.5}, ok), ValidationError);
}

TEST(Minimize, BudgetExhaustionReturnsBestSoFar)
{
    NelderMeadSettings s;
    s.max_evaluations = 40;
    const std::vector<Interval> box{{0.0, 2.0}, {0.0, 2.0}};
    const auto r = minimize(
        [](std::span<const double> x) {
            return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
        },
        std::vector<double>{0.1, 1.9}, box, s);
    EXPECT_FALSE(r.converged);
    EXPECT_TRUE(std::isfinite(r.value));
}

TEST(BoxTransform, RoundTrip)
{
    const Interval box{-2.0, 5.0};
    for (double x : {-1.999, -1.0, 0.0, 1.5, 4.9}) {
        EXPECT_NEAR(to_box(from_box(x, box), box), x, 1e-9);
    }
    EXPECT_GE(to_box(-1e3, box), box.lo);
    EXPECT_LE(to_box(1e3, box), box.hi);
}
