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

#include <seaird/error.hpp>
#include <seaird/estimator.hpp>

#include <gtest/gtest.h>

using namespace seaird;

namespace
{

FitConfig brazil_config()
{
    FitConfig cfg;
    cfg.train_start = Date(2020, 4, 4);
    cfg.train_end   = Date(2020, 4, 25);
    cfg.test_end    = Date(2020, 5, 16);
    return cfg;
}

DemographicConstants brazil_demographics()
{
    return {0.0, synthetic::brazil_generator().population};
}

double relative_error(double estimate, double truth)
{
    return std::abs(estimate - truth) / std::abs(truth);
}

class SyntheticFit : public ::testing::Test
{
protected:
    static void SetUpTestSuite()
    {
        data   = new ObservationSeries(synthetic::generate(synthetic::brazil_generator()));
        result = new FitResult(fit(*data, brazil_demographics(), brazil_config()));
    }
    static void TearDownTestSuite()
    {
        delete result;
        delete data;
    }
    static ObservationSeries* data;
    static FitResult* result;
};

ObservationSeries* SyntheticFit::data = nullptr;
FitResult* SyntheticFit::result       = nullptr;

} // namespace

TEST_F(SyntheticFit, ObjectiveNotAboveGeneratingPoint)
{
    const auto g = synthetic::brazil_generator();
    const FitProblem problem(*data, brazil_demographics(), brazil_config());
    const double at_truth = problem.objective(problem.encode(g.phi, g.x0));
    EXPECT_LT(at_truth, 1e-12);
    EXPECT_LE(result->objective_value, at_truth + 1e-8);
}

TEST_F(SyntheticFit, AcceptedWithHighTestFit)
{
    EXPECT_TRUE(result->accepted);
    EXPECT_GE(result->r2_test.min_channel(), 0.999);
    EXPECT_GE(result->gate_value, brazil_config().tau);
    EXPECT_EQ(result->n_restarts_used, 0);
}

TEST_F(SyntheticFit, RecoversRecoveryAndFatalityRates)
{
    const auto g = synthetic::brazil_generator();
    EXPECT_LT(relative_error(result->phi.gamma1, g.phi.gamma1), 0.05);
    EXPECT_LT(relative_error(result->phi.theta, g.phi.theta), 0.05);
}

TEST_F(SyntheticFit, AnchoredInitialState)
{
    const auto g = synthetic::brazil_generator();
    EXPECT_EQ(result->x0.I, g.x0.I);
    EXPECT_EQ(result->x0.D, g.x0.D);
    EXPECT_NEAR(result->x0.total(), g.population, 1e-6 * g.population);
    EXPECT_LE(result->x0.E, 100.0 * g.x0.I);
    EXPECT_LE(result->x0.A, 100.0 * g.x0.I);
    EXPECT_LE(result->x0.R, 100.0 * g.x0.I);
}

TEST_F(SyntheticFit, EstimateInsideBox)
{
    EXPECT_TRUE(brazil_config().bounds.contains(result->phi));
}

TEST_F(SyntheticFit, PredictionCoversWholeWindow)
{
    ASSERT_EQ(result->predicted.size(), 43u);
    EXPECT_EQ(result->predicted.start_date, Date(2020, 4, 4));
    EXPECT_EQ(result->observed, *data);
    EXPECT_EQ(result->diagnostics.size(), 16u);
}

TEST(MultiStart, SingleStartIsOneMinimizeCall)
{
    const auto data = synthetic::generate(synthetic::brazil_generator());
    auto cfg        = brazil_config();
    cfg.n_starts    = 1;
    cfg.optimizer.max_evaluations = 3000;
    const FitProblem problem(data, brazil_demographics(), cfg);
    const auto starts = problem.starting_points(0);
    ASSERT_EQ(starts.size(), 1u);

    const auto best = multi_start(data, brazil_demographics(), cfg);
    const auto direct =
        minimize([&](std::span<const double> z) { return problem.objective(z); }, starts[0], problem.bounds(),
                 cfg.optimizer);
    EXPECT_EQ(best.value, direct.value);
    for (std::size_t i = 0; i < FitProblem::dimension; ++i)
        EXPECT_EQ(best.best[i], direct.x[i]);
}

TEST(MultiStart, MoreStartsNeverWorse)
{
    const auto data = synthetic::generate(synthetic::brazil_generator());
    auto cfg        = brazil_config();
    cfg.optimizer.max_evaluations = 3000;
    cfg.n_starts    = 1;
    const auto one  = multi_start(data, brazil_demographics(), cfg);
    cfg.n_starts    = 16;
    const auto many = multi_start(data, brazil_demographics(), cfg);
    EXPECT_LE(many.value, one.value);
}

TEST(MultiStart, DeterministicAcrossRunsAndThreadCounts)
{
    const auto data = synthetic::generate(synthetic::brazil_generator());
    auto cfg        = brazil_config();
    cfg.n_starts    = 6;
    cfg.optimizer.max_evaluations = 2000;
    cfg.threads     = 1;
    const auto a    = multi_start(data, brazil_demographics(), cfg);
    const auto b    = multi_start(data, brazil_demographics(), cfg);
    cfg.threads     = 4;
    const auto c    = multi_start(data, brazil_demographics(), cfg);
    EXPECT_EQ(a.best, b.best);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.best, c.best);
    ASSERT_EQ(a.records.size(), c.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i)
        EXPECT_EQ(a.records[i].value, c.records[i].value);
}

TEST(FitProblem, StartsRespectBoxAndRetriesKeepParameterDraws)
{
    const auto data = synthetic::generate(synthetic::brazil_generator());
    const FitProblem problem(data, brazil_demographics(), brazil_config());
    const auto first  = problem.starting_points(0);
    const auto second = problem.starting_points(1);
    ASSERT_EQ(first.size(), 16u);
    for (std::size_t s = 0; s < first.size(); ++s) {
        for (std::size_t i = 0; i < FitProblem::dimension; ++i) {
            EXPECT_TRUE(problem.bounds()[i].contains(first[s][i]));
            if (i < ParameterVector::size)
                EXPECT_EQ(first[s][i], second[s][i]);
        }
    }
    bool redrawn = false;
    for (std::size_t s = 0; s < first.size(); ++s)
        redrawn = redrawn || first[s][ParameterVector::size] != second[s][ParameterVector::size];
    EXPECT_TRUE(redrawn);
}

TEST(FitProblem, AnchorsFromData)
{
    auto g          = synthetic::brazil_generator();
    g.case_baseline = 777.0;
    const auto data = synthetic::generate(g);
    const FitProblem problem(data, brazil_demographics(), brazil_config());
    EXPECT_DOUBLE_EQ(problem.anchored_infected(), g.x0.I);
    EXPECT_DOUBLE_EQ(problem.anchored_deaths(), g.x0.D);
    const auto z = problem.encode(g.phi, g.x0);
    EXPECT_EQ(problem.parameters(z), g.phi);
    const auto pred = problem.predict(z, 42);
    EXPECT_NEAR(pred.values.back().cum_infected, data.values.back().cum_infected, 1e-6);
}

TEST(Fit, NoisyDataStillAccepted)
{
    const auto data = synthetic::with_increment_noise(synthetic::generate(synthetic::brazil_generator()), 0.01, 99);
    const auto r    = fit(data, brazil_demographics(), brazil_config());
    EXPECT_TRUE(r.accepted);
    EXPECT_GE(r.r2_test.min_channel(), 0.95);
}

TEST(Fit, EmptyEpidemicIsRejected)
{
    ObservationSeries zeros{Date(2020, 4, 4), std::vector<ObservationPoint>(43), 0.0};
    try {
        const auto r = fit(zeros, brazil_demographics(), brazil_config());
        EXPECT_FALSE(r.accepted);
    } catch (const Error&) {
        SUCCEED();
    }
}

TEST(Fit, UnreachableThresholdUsesEveryRetry)
{
    const auto data = synthetic::generate(synthetic::brazil_generator());
    auto cfg        = brazil_config();
    cfg.tau         = 0.999999999999;
    cfg.n_starts    = 2;
    cfg.max_retries = 2;
    cfg.optimizer.max_evaluations = 400;
    const auto r = fit(data, brazil_demographics(), cfg);
    EXPECT_FALSE(r.accepted);
    EXPECT_EQ(r.n_restarts_used, 2);
    EXPECT_EQ(r.diagnostics.size(), 6u);
    EXPECT_LT(r.gate_value, cfg.tau);
}

TEST(Fit, RejectsInvalidConfiguration)
{
    const auto data = synthetic::generate(synthetic::brazil_generator());
    auto cfg        = brazil_config();
    cfg.train_end   = cfg.train_start;
    EXPECT_THROW(fit(data, brazil_demographics(), cfg), ValidationError);
    cfg          = brazil_config();
    cfg.n_starts = 0;
    EXPECT_THROW(fit(data, brazil_demographics(), cfg), ValidationError);
    cfg     = brazil_config();
    cfg.tau = 1.0;
    EXPECT_THROW(fit(data, brazil_demographics(), cfg), ValidationError);
    cfg                    = brazil_config();
    cfg.bounds["beta"].hi  = 2.0;
    EXPECT_THROW(fit(data, brazil_demographics(), cfg), ValidationError);
}

TEST(Fit, RejectsUncoveredWindowAndSmallPopulation)
{
    const auto data = synthetic::generate(synthetic::brazil_generator());
    auto cfg        = brazil_config();
    cfg.test_end    = Date(2020, 5, 20);
    EXPECT_THROW(fit(data, brazil_demographics(), cfg), DataError);
    EXPECT_THROW(fit(data, {0.0, 1000.0}, brazil_config()), ValidationError);
}
