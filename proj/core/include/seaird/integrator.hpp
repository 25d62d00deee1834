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
#ifndef SEAIRD_INTEGRATOR_HPP
#define SEAIRD_INTEGRATOR_HPP

#include "seaird/error.hpp"
#include "seaird/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace seaird
{

/// Step-size control of the adaptive Runge-Kutta integrator.
struct IntegrationConfig {
    double rel_tol          = 1e-6;
    double abs_tol          = 1e-8; ///< persons
    double initial_step     = 0.1; ///< days
    double max_step         = 1.0; ///< days
    std::size_t max_steps   = 100000;

    void validate() const;
};

/// Daily samples of the SEAIRD state, day 0 .. horizon.
struct Trajectory {
    std::vector<int> days;
    std::vector<StateVector> states;
    double max_undershoot = 0.0; ///< largest negative excursion removed by clamping (>= 0)
    std::size_t steps     = 0; ///< accepted + rejected steps
};

namespace dopri
{

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
// b - b_hat, the embedded 4th order error weights
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t Dim>
using Vec = std::array<double, Dim>;

template <std::size_t Dim>
struct Step {
    Vec<Dim> y;   ///< 5th order solution
    Vec<Dim> err; ///< local error estimate
    Vec<Dim> k7;  ///< derivative at the new point (FSAL)
};

/// One Dormand-Prince step from (t, y) with derivative k1 = f(t, y).
template <std::size_t Dim, class Rhs>
Step<Dim> step(Rhs& f, double t, const Vec<Dim>& y, const Vec<Dim>& k1, double h)
{
    Vec<Dim> tmp;
    auto stage = [&](auto&& combine) {
        for (std::size_t i = 0; i < Dim; ++i) {
            tmp[i] = y[i] + h * combine(i);
        }
        return tmp;
    };
    const Vec<Dim> k2 = f(t + c2 * h, stage([&](std::size_t i) { return a21 * k1[i]; }));
    const Vec<Dim> k3 = f(t + c3 * h, stage([&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; }));
    const Vec<Dim> k4 =
        f(t + c4 * h, stage([&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; }));
    const Vec<Dim> k5 = f(t + c5 * h, stage([&](std::size_t i) {
                              return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
                          }));
    const Vec<Dim> k6 = f(t + h, stage([&](std::size_t i) {
                              return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
                          }));
    Step<Dim> out;
    out.y  = stage([&](std::size_t i) { return b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]; });
    out.k7 = f(t + h, out.y);
    for (std::size_t i = 0; i < Dim; ++i) {
        out.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * out.k7[i]);
    }
    return out;
}

template <std::size_t Dim>
double error_norm(const Vec<Dim>& err, const Vec<Dim>& y0, const Vec<Dim>& y1, double rel_tol, double abs_tol)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < Dim; ++i) {
        const double scale = abs_tol + rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r     = err[i] / scale;
        sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(Dim));
}

template <std::size_t Dim>
bool all_finite(const Vec<Dim>& v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

} // namespace dopri

/// Result of integrate_daily: the solution at t = 0, 1, ..., horizon.
template <std::size_t Dim>
struct DailySolution {
    std::vector<std::array<double, Dim>> samples;
    std::size_t steps = 0;
};

/**
 * Adaptive Dormand-Prince integration of y' = f(t, y) from t = 0, sampled at
 * every integer day up to `horizon`. Steps are shortened so that they land
 * exactly on day boundaries; no interpolation is involved.
 *
 * Throws IntegrationError when the step budget is exhausted or the solution
 * stops being finite.
 */
template <std::size_t Dim, class Rhs>
DailySolution<Dim> integrate_daily(Rhs&& f, const std::array<double, Dim>& y0, int horizon,
                                   const IntegrationConfig& cfg)
{
    cfg.validate();
    if (horizon < 0) {
        throw ValidationError("horizon must be >= 0, got " + std::to_string(horizon));
    }
    DailySolution<Dim> sol;
    sol.samples.reserve(static_cast<std::size_t>(horizon) + 1);
    sol.samples.push_back(y0);

    std::array<double, Dim> y = y0;
    std::array<double, Dim> k = f(0.0, y);
    double t                  = 0.0;
    double h                  = std::min(cfg.initial_step, cfg.max_step);

    for (int day = 1; day <= horizon; ++day) {
        const double target = static_cast<double>(day);
        while (t < target) {
            if (sol.steps >= cfg.max_steps) {
                throw IntegrationError("step budget of " + std::to_string(cfg.max_steps) +
                                       " exhausted at t = " + std::to_string(t));
            }
            ++sol.steps;
            const double remaining = target - t;
            const bool lands       = h >= remaining;
            const double h_try     = lands ? remaining : h;

            const auto s = dopri::step<Dim>(f, t, y, k, h_try);
            double err   = dopri::error_norm<Dim>(s.err, y, s.y, cfg.rel_tol, cfg.abs_tol);
            if (!dopri::all_finite<Dim>(s.y) || !dopri::all_finite<Dim>(s.k7) || !std::isfinite(err)) {
                err = std::numeric_limits<double>::infinity();
            }
            const double factor =
                err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);

            if (err <= 1.0) {
                t = lands ? target : t + h_try;
                y = s.y;
                k = s.k7;
                // a step cut short by the day boundary says little about the natural size
                const double proposed = std::min(h_try * factor, cfg.max_step);
                h                     = lands ? std::max(h, proposed) : proposed;
            }
            else {
                h = h_try * factor;
                if (h < 1e-12) {
                    throw IntegrationError("step size underflow at t = " + std::to_string(t) +
                                           (std::isfinite(err) ? "" : " (nonfinite state)"));
                }
            }
        }
        sol.samples.push_back(y);
    }
    return sol;
}

/// Fixed-step 5th order Dormand-Prince integration over [0, t_end] with n_steps equal steps.
template <std::size_t Dim, class Rhs>
std::array<double, Dim> integrate_fixed_step(Rhs&& f, const std::array<double, Dim>& y0, double t_end,
                                             std::size_t n_steps)
{
    if (n_steps == 0 || !(t_end > 0.0)) {
        throw ValidationError("fixed-step integration needs t_end > 0 and at least one step");
    }
    const double h = t_end / static_cast<double>(n_steps);
    auto y         = y0;
    auto k         = f(0.0, y);
    for (std::size_t i = 0; i < n_steps; ++i) {
        const auto s = dopri::step<Dim>(f, static_cast<double>(i) * h, y, k, h);
        y            = s.y;
        k            = s.k7;
    }
    if (!dopri::all_finite<Dim>(y)) {
        throw IntegrationError("nonfinite state in fixed-step integration");
    }
    return y;
}

/**
 * Integrates the SEAIRD system from x0 and returns the state at every day
 * 0..horizon. Negative undershoot is clamped to zero in the emitted samples
 * only; the largest clamped magnitude is reported in Trajectory::max_undershoot.
 */
Trajectory integrate(const StateVector& x0, const ParameterVector& p, const DemographicConstants& d, int horizon,
                     const IntegrationConfig& cfg = {});

} // namespace seaird

#endif // SEAIRD_INTEGRATOR_HPP
