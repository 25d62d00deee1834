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
#include <seaird/estimator.hpp>
#include <seaird/integrator.hpp>
#include <seaird/model.hpp>
#include <seaird/observation.hpp>

#include <benchmark/benchmark.h>

using namespace seaird;

namespace
{

const ParameterVector phi{0.5, 0.7567, 42.3, 0.998, 0.0682, 0.0006, 0.0698};

StateVector x0()
{
    StateVector x{0.0, 50000.0, 1000.0, 500.0, 0.0, 400.0};
    x.S = 211049527.0 - x.total();
    return x;
}

DemographicConstants brazil()
{
    DemographicConstants d;
    d.population = 211049527.0;
    return d;
}

FitConfig window()
{
    FitConfig cfg;
    cfg.train_start = Date(2020, 4, 4);
    cfg.train_end   = Date(2020, 4, 25);
    cfg.test_end    = Date(2020, 5, 16);
    return cfg;
}

void BM_Rhs(benchmark::State& state)
{
    const auto x = x0();
    const auto d = brazil();
    for (auto _ : state)
        benchmark::DoNotOptimize(rhs(0.0, x, phi, d));
}
BENCHMARK(BM_Rhs);

void BM_Integrate(benchmark::State& state)
{
    const auto x      = x0();
    const auto d      = brazil();
    const int horizon = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate(x, phi, d, horizon));
}
BENCHMARK(BM_Integrate)->Arg(42)->Arg(100)->Arg(365);

void BM_Objective(benchmark::State& state)
{
    const auto data = predict_observables(phi, x0(), brazil(), 42, {}, Date(2020, 4, 4));
    const FitProblem problem(data, brazil(), window());
    const auto z = problem.encode(phi, x0());
    for (auto _ : state)
        benchmark::DoNotOptimize(problem.objective(z));
}
BENCHMARK(BM_Objective);

void BM_Fit(benchmark::State& state)
{
    const auto data = predict_observables(phi, x0(), brazil(), 42, {}, Date(2020, 4, 4));
    auto cfg        = window();
    cfg.n_starts    = static_cast<int>(state.range(0));
    cfg.max_retries = 0;
    cfg.threads     = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(fit(data, brazil(), cfg));
}
BENCHMARK(BM_Fit)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
