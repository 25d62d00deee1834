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
#ifndef SEAIRD_ESTIMATOR_HPP
#define SEAIRD_ESTIMATOR_HPP

#include "seaird/date.hpp"
#include "seaird/integrator.hpp"
#include "seaird/model.hpp"
#include "seaird/observation.hpp"
#include "seaird/optimize.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace seaird
{

/// Search box for the seven parameters, indexed like ParameterVector::names.
struct ParameterBounds {
    std::array<Interval, ParameterVector::size> box{{
        {0.01, 0.99}, // alpha
        {0.0, 1.0},   // beta
        {0.0, 100.0}, // delta
        {0.0, 1.0},   // gamma1
        {0.0, 1.0},   // gamma2
        {0.0, 1.0},   // mu
        {0.0, 1.0},   // theta
    }};

    Interval& operator[](std::string_view name);
    const Interval& operator[](std::string_view name) const;

    bool contains(const ParameterVector& p) const;
    /// Throws ValidationError if a box is empty or leaves the parameter's domain.
    void validate() const;
};

struct FitConfig {
    Date train_start; ///< T0
    Date train_end;   ///< T1, last training day
    Date test_end;    ///< Tf; the test window is (T1, Tf]

    std::optional<WeightVector> weights; ///< unset: reciprocal of each channel's final training value
    WeightingMode weighting = WeightingMode::diagonal;
    PoolingMode r2_pooling  = PoolingMode::per_channel;
    double tau              = 0.90;

    ParameterBounds bounds;
    /// Upper bound of the free initial compartments E, A, R as a multiple of the anchored I(0).
    double initial_state_multiple = 100.0;

    int n_starts           = 16;
    int max_retries        = 4;
    std::uint64_t seed     = 20200404;
    unsigned threads       = 0; ///< 0: one per hardware thread
    NelderMeadSettings optimizer{};
    IntegrationConfig integration{};

    void validate() const;
};

/// Per-start record of the optimizer runs.
struct StartRecord {
    int attempt             = 0;
    int start               = 0;
    double initial_value    = 0.0;
    double value            = 0.0;
    std::size_t evaluations = 0;
    bool converged          = false;
    bool diverged           = false; ///< objective not finite at the start point
};

struct FitResult {
    ParameterVector phi;
    StateVector x0;
    RSquared r2_train;
    RSquared r2_test;
    double gate_value      = 0.0; ///< test R^2 compared against tau
    double objective_value = 0.0; ///< training objective at the optimum
    int n_restarts_used    = 0; ///< fitting attempts beyond the first
    bool accepted          = false;
    WeightVector weights;
    ObservationSeries observed;  ///< data over [T0, Tf]
    ObservationSeries predicted; ///< model over [T0, Tf], same case baseline as the data
    std::vector<StartRecord> diagnostics;
};

/**
 * Training problem in the joint coordinates
 * (alpha, beta, delta, gamma1, gamma2, mu, theta, E0, A0, R0).
 *
 * I(0) is anchored to the first daily increment of cases at T0 and D(0) to
 * cumulative deaths at T0; S(0) is whatever remains of N.
 */
class FitProblem
{
public:
    static constexpr std::size_t dimension = ParameterVector::size + 3;

    FitProblem(const ObservationSeries& data, const DemographicConstants& demographics, const FitConfig& cfg);

    std::span<const Interval> bounds() const
    {
        return m_bounds;
    }
    const ObservationSeries& train() const
    {
        return m_train;
    }
    const ObservationSeries& full() const
    {
        return m_full;
    }
    const WeightVector& weights() const
    {
        return m_weights;
    }
    double anchored_infected() const
    {
        return m_i0;
    }
    double anchored_deaths() const
    {
        return m_d0;
    }

    ParameterVector parameters(std::span<const double> z) const;
    StateVector initial_state(std::span<const double> z) const;
    std::array<double, dimension> encode(const ParameterVector& phi, const StateVector& x0) const;

    /// Training objective; +infinity when the model cannot be integrated.
    double objective(std::span<const double> z) const;

    /// Prediction over `horizon` days from T0, including the case baseline.
    ObservationSeries predict(std::span<const double> z, int horizon) const;

    /**
     * Latin-hypercube starting points. Parameter coordinates always come from
     * the same stream; the initial-state coordinates come from stream `attempt`,
     * so a retry only re-draws X(0).
     */
    std::vector<std::array<double, dimension>> starting_points(int attempt) const;

private:
    FitConfig m_cfg;
    DemographicConstants m_demographics;
    ObservationSeries m_full;
    ObservationSeries m_train;
    WeightVector m_weights;
    double m_i0 = 0.0;
    double m_d0 = 0.0;
    std::array<Interval, dimension> m_bounds{};
};

struct MultiStartResult {
    std::array<double, FitProblem::dimension> best{};
    double value = 0.0;
    std::vector<StartRecord> records;
};

/// Minimizes from every start (concurrently when threads allow). Ties go to the lower start index.
MultiStartResult multi_start(const FitProblem& problem, std::span<const std::array<double, FitProblem::dimension>> starts,
                             const FitConfig& cfg, int attempt = 0);

/// Best (phi, X(0)) over the first attempt's seeded starts.
MultiStartResult multi_start(const ObservationSeries& data, const DemographicConstants& d, const FitConfig& cfg);

/**
 * Parameter estimation with cross-validation: fit on [T0, T1], score R^2 on
 * (T1, Tf], accept when the gate reaches tau, otherwise retry with freshly
 * drawn initial states up to max_retries times. When every attempt falls
 * short the attempt with the highest test R^2 is returned with accepted = false.
 */
FitResult fit(const ObservationSeries& data, const DemographicConstants& d, const FitConfig& cfg);

} // namespace seaird

#endif // SEAIRD_ESTIMATOR_HPP
