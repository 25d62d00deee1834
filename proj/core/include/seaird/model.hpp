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
#ifndef SEAIRD_MODEL_HPP
#define SEAIRD_MODEL_HPP

#include <array>
#include <cstddef>
#include <string_view>

namespace seaird
{

/**
 * Populations of the six SEAIRD compartments at one instant, in persons.
 *
 * D is cumulative: it only ever grows. The living population is
 * S + E + I + A + R; dead persons do not take part in mixing.
 */
struct StateVector {
    double S = 0.0; ///< susceptible
    double E = 0.0; ///< exposed, incubating
    double I = 0.0; ///< symptomatic infective
    double A = 0.0; ///< asymptomatic infective
    double R = 0.0; ///< removed
    double D = 0.0; ///< cumulative dead

    static constexpr std::size_t size = 6;
    static constexpr std::array<std::string_view, size> names{"S", "E", "I", "A", "R", "D"};

    constexpr double living() const
    {
        return S + E + I + A + R;
    }
    constexpr double total() const
    {
        return living() + D;
    }

    constexpr std::array<double, size> to_array() const
    {
        return {S, E, I, A, R, D};
    }
    static constexpr StateVector from_array(const std::array<double, size>& a)
    {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }

    bool operator==(const StateVector&) const = default;
};

/// The seven estimated SEAIRD rates and ratios.
struct ParameterVector {
    double alpha  = 0.5; ///< fraction of exposed progressing to symptomatic, strictly in (0,1)
    double beta   = 0.0; ///< transmission probability per day, [0,1]
    double delta  = 0.0; ///< asymptomatic / symptomatic infective force ratio, >= 0
    double gamma1 = 0.0; ///< recovery probability of symptomatic per day, [0,1]
    double gamma2 = 0.0; ///< recovery probability of asymptomatic per day, [0,1]
    double mu     = 0.0; ///< progression rate out of E per day, >= 0
    double theta  = 0.0; ///< fatality rate of symptomatic per day, [0,1]

    static constexpr std::size_t size = 7;
    static constexpr std::array<std::string_view, size> names{"alpha",  "beta", "delta", "gamma1",
                                                              "gamma2", "mu",   "theta"};

    constexpr std::array<double, size> to_array() const
    {
        return {alpha, beta, delta, gamma1, gamma2, mu, theta};
    }
    static constexpr ParameterVector from_array(const std::array<double, size>& a)
    {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }

    /// Value by name; throws ValidationError for an unknown name.
    double get(std::string_view name) const;

    /// Throws ValidationError naming the first field outside its domain.
    void validate() const;

    bool operator==(const ParameterVector&) const = default;
};

/// Fixed, never estimated, population constants.
struct DemographicConstants {
    double eta        = 0.0; ///< birth and death rate per day
    double population = 1.0; ///< N

    void validate() const;
};

/// Throws ValidationError if any compartment is negative or nonfinite.
void validate_state(const StateVector& x);

/// beta * S * (I + delta * A) / (S + E + I + A + R), persons per day.
/// Throws DegenerateDenominatorError when the living population is not positive.
double force_of_infection(const StateVector& x, const ParameterVector& p);

/// Right-hand side of the SEAIRD system. Autonomous; `t` is ignored.
StateVector rhs(double t, const StateVector& x, const ParameterVector& p, const DemographicConstants& d);

} // namespace seaird

#endif // SEAIRD_MODEL_HPP
