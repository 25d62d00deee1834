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
#include "seaird/integrator.hpp"

#include <limits>

namespace seaird
{

void IntegrationConfig::validate() const
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(rel_tol) || !positive(abs_tol)) {
        throw ValidationError("integration tolerances must be > 0");
    }
    if (!positive(initial_step) || !positive(max_step) || max_step < initial_step) {
        throw ValidationError("integration steps need max_step >= initial_step > 0");
    }
    if (max_steps == 0) {
        throw ValidationError("max_steps must be > 0");
    }
}

Trajectory integrate(const StateVector& x0, const ParameterVector& p, const DemographicConstants& d, int horizon,
                     const IntegrationConfig& cfg)
{
    validate_state(x0);
    p.validate();
    d.validate();
    if (horizon < 1) {
        throw ValidationError("horizon must be >= 1 day, got " + std::to_string(horizon));
    }

    auto f = [&](double t, const std::array<double, StateVector::size>& y) {
        return rhs(t, StateVector::from_array(y), p, d).to_array();
    };
    const auto sol = integrate_daily<StateVector::size>(f, x0.to_array(), horizon, cfg);

    Trajectory traj;
    traj.steps = sol.steps;
    traj.days.reserve(sol.samples.size());
    traj.states.reserve(sol.samples.size());
    for (std::size_t day = 0; day < sol.samples.size(); ++day) {
        auto y = sol.samples[day];
        for (double& v : y) {
            if (v < 0.0) {
                traj.max_undershoot = std::max(traj.max_undershoot, -v);
                v                   = 0.0;
            }
        }
        traj.days.push_back(static_cast<int>(day));
        traj.states.push_back(StateVector::from_array(y));
    }
    return traj;
}

} // namespace seaird
