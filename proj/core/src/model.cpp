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
#include "seaird/model.hpp"
#include "seaird/error.hpp"

#include <cmath>
#include <string>

namespace seaird
{

namespace
{

void require(bool ok, std::string_view field, std::string_view rule, double value)
{
    if (!ok) {
        throw ValidationError(std::string(field) + " = " + std::to_string(value) + " violates " +
                              std::string(rule));
    }
}

bool in_unit(double v)
{
    return std::isfinite(v) && v >= 0.0 && v <= 1.0;
}

bool nonneg(double v)
{
    return std::isfinite(v) && v >= 0.0;
}

} // namespace

double ParameterVector::get(std::string_view name) const
{
    const auto values = to_array();
    for (std::size_t i = 0; i < size; ++i) {
        if (names[i] == name) {
            return values[i];
        }
    }
    throw ValidationError("unknown parameter '" + std::string(name) + "'");
}

void ParameterVector::validate() const
{
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha", "0 < alpha < 1", alpha);
    require(in_unit(beta), "beta", "0 <= beta <= 1", beta);
    require(nonneg(delta), "delta", "delta >= 0", delta);
    require(in_unit(gamma1), "gamma1", "0 <= gamma1 <= 1", gamma1);
    require(in_unit(gamma2), "gamma2", "0 <= gamma2 <= 1", gamma2);
    require(nonneg(mu), "mu", "mu >= 0", mu);
    require(in_unit(theta), "theta", "0 <= theta <= 1", theta);
}

void DemographicConstants::validate() const
{
    require(nonneg(eta), "eta", "eta >= 0", eta);
    require(std::isfinite(population) && population > 0.0, "population", "N > 0", population);
}

void validate_state(const StateVector& x)
{
    const auto values = x.to_array();
    for (std::size_t i = 0; i < StateVector::size; ++i) {
        require(nonneg(values[i]), StateVector::names[i], ">= 0", values[i]);
    }
}

double force_of_infection(const StateVector& x, const ParameterVector& p)
{
    const double living = x.living();
    if (!(living > 0.0)) {
        throw DegenerateDenominatorError("living population S+E+I+A+R = " + std::to_string(living) +
                                         " is not positive");
    }
    return p.beta * x.S * (x.I + p.delta * x.A) / living;
}

StateVector rhs(double /*t*/, const StateVector& x, const ParameterVector& p, const DemographicConstants& d)
{
    const double force = force_of_infection(x, p);
    const double eta   = d.eta;
    StateVector dx;
    dx.S = -force - eta * x.S + eta * d.population;
    dx.E = force - (p.mu + eta) * x.E;
    dx.I = p.alpha * p.mu * x.E - (p.gamma1 + p.theta + eta) * x.I;
    dx.A = (1.0 - p.alpha) * p.mu * x.E - (p.gamma2 + eta) * x.A;
    dx.R = p.gamma1 * x.I + p.gamma2 * x.A - eta * x.R;
    // D gains theta*I only; there is no eta*I outflow from I into D
    dx.D = p.theta * x.I;
    return dx;
}

} // namespace seaird
