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
#include "seaird/optimize.hpp"
#include "seaird/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace seaird
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

struct Coefficients {
    double reflect, expand, contract, shrink;
};

Coefficients coefficients(std::size_t n)
{
    if (n <= 2) {
        return {1.0, 2.0, 0.5, 0.5};
    }
    const double dn = static_cast<double>(n);
    return {1.0, 1.0 + 2.0 / dn, 0.75 - 1.0 / (2.0 * dn), 1.0 - 1.0 / dn};
}

class Problem
{
public:
    Problem(const Objective& f, std::span<const double> x_init, std::span<const Interval> bounds)
        : m_f(f)
        , m_bounds(bounds.begin(), bounds.end())
        , m_point(x_init.begin(), x_init.end())
    {
        for (std::size_t i = 0; i < m_bounds.size(); ++i) {
            if (!m_bounds[i].fixed()) {
                m_free.push_back(i);
            }
            else {
                m_point[i] = m_bounds[i].lo;
            }
        }
    }

    std::size_t dim() const
    {
        return m_free.size();
    }

    std::vector<double> to_u(std::span<const double> x) const
    {
        std::vector<double> u(m_free.size());
        for (std::size_t k = 0; k < m_free.size(); ++k) {
            u[k] = from_box(x[m_free[k]], m_bounds[m_free[k]]);
        }
        return u;
    }

    const std::vector<double>& to_x(const std::vector<double>& u)
    {
        for (std::size_t k = 0; k < m_free.size(); ++k) {
            m_point[m_free[k]] = to_box(u[k], m_bounds[m_free[k]]);
        }
        return m_point;
    }

    double operator()(const std::vector<double>& u)
    {
        ++m_evaluations;
        const double v = m_f(to_x(u));
        return std::isfinite(v) ? v : inf;
    }

    std::size_t evaluations() const
    {
        return m_evaluations;
    }

private:
    const Objective& m_f;
    std::vector<Interval> m_bounds;
    std::vector<double> m_point;
    std::vector<std::size_t> m_free;
    std::size_t m_evaluations = 0;
};

} // namespace

void NelderMeadSettings::validate() const
{
    if (max_evaluations == 0 || !(f_tol >= 0.0) || !(x_tol >= 0.0) || !(initial_step > 0.0) || max_restarts < 0) {
        throw ValidationError("invalid Nelder-Mead settings");
    }
}

double to_box(double u, const Interval& box)
{
    if (box.fixed()) {
        return box.lo;
    }
    const double s = 1.0 / (1.0 + std::exp(-u));
    return std::clamp(box.lo + (box.hi - box.lo) * s, box.lo, box.hi);
}

double from_box(double x, const Interval& box)
{
    if (box.fixed()) {
        return 0.0;
    }
    const double width = box.hi - box.lo;
    const double eps   = 1e-12 * width;
    const double c     = std::clamp(x, box.lo + eps, box.hi - eps);
    return std::log((c - box.lo) / (box.hi - c));
}

MinimizeResult minimize(const Objective& f, std::span<const double> x_init, std::span<const Interval> bounds,
                        const NelderMeadSettings& settings)
{
    settings.validate();
    if (x_init.size() != bounds.size() || bounds.empty()) {
        throw ValidationError("starting point and box dimensions differ");
    }
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (!(bounds[i].lo <= bounds[i].hi) || !std::isfinite(bounds[i].lo) || !std::isfinite(bounds[i].hi)) {
            throw ValidationError("empty or nonfinite box in coordinate " + std::to_string(i));
        }
    }

    Problem problem(f, x_init, bounds);
    const std::size_t n = problem.dim();

    std::vector<double> best_u = problem.to_u(x_init);
    double best_f              = problem(best_u);
    if (!std::isfinite(best_f)) {
        throw NumericalError("objective is not finite at the starting point");
    }

    MinimizeResult result;
    result.converged = true;

    if (n > 0) {
        const auto c = coefficients(n);
        std::vector<std::vector<double>> simplex(n + 1);
        std::vector<double> values(n + 1);
        std::vector<std::size_t> order(n + 1);
        std::vector<double> centroid(n), trial(n), trial2(n);

        auto along = [&](double t, const std::vector<double>& worst, std::vector<double>& out) {
            for (std::size_t k = 0; k < n; ++k) {
                out[k] = centroid[k] + t * (centroid[k] - worst[k]);
            }
        };

        for (int round = 0;; ++round) {
            simplex[0] = best_u;
            values[0]  = best_f;
            // vertices step toward the box centre, far enough to leave a saturated logit
            for (std::size_t k = 0; k < n; ++k) {
                const double u0   = best_u[k];
                const double step = std::max(settings.initial_step, std::abs(u0));
                simplex[k + 1]    = best_u;
                simplex[k + 1][k] = u0 > 0.0 ? u0 - step : u0 + step;
                values[k + 1]     = problem(simplex[k + 1]);
            }
            const double round_start = best_f;
            bool converged           = false;

            while (problem.evaluations() < settings.max_evaluations) {
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::stable_sort(order.begin(), order.end(),
                                 [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
                const std::size_t lo = order.front(), hi = order.back(), next = order[n - 1];

                double diameter = 0.0;
                for (std::size_t j = 0; j <= n; ++j) {
                    for (std::size_t k = 0; k < n; ++k) {
                        diameter = std::max(diameter, std::abs(simplex[j][k] - simplex[lo][k]));
                    }
                }
                const double spread = values[hi] - values[lo];
                if (diameter <= settings.x_tol || spread <= settings.f_tol * std::abs(values[lo])) {
                    converged = true;
                    break;
                }

                std::fill(centroid.begin(), centroid.end(), 0.0);
                for (std::size_t j = 0; j <= n; ++j) {
                    if (j == hi) {
                        continue;
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        centroid[k] += simplex[j][k] / static_cast<double>(n);
                    }
                }

                along(c.reflect, simplex[hi], trial);
                const double fr = problem(trial);
                if (fr < values[lo]) {
                    along(c.reflect * c.expand, simplex[hi], trial2);
                    const double fe = problem(trial2);
                    if (fe < fr) {
                        simplex[hi] = trial2;
                        values[hi]  = fe;
                    }
                    else {
                        simplex[hi] = trial;
                        values[hi]  = fr;
                    }
                    continue;
                }
                if (fr < values[next]) {
                    simplex[hi] = trial;
                    values[hi]  = fr;
                    continue;
                }
                const bool outside = fr < values[hi];
                along(outside ? c.reflect * c.contract : -c.contract, simplex[hi], trial2);
                const double fc = problem(trial2);
                if (outside ? fc <= fr : fc < values[hi]) {
                    simplex[hi] = trial2;
                    values[hi]  = fc;
                    continue;
                }
                for (std::size_t j = 0; j <= n; ++j) {
                    if (j == lo) {
                        continue;
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        simplex[j][k] = simplex[lo][k] + c.shrink * (simplex[j][k] - simplex[lo][k]);
                    }
                    values[j] = problem(simplex[j]);
                }
            }

            const auto best_it = std::min_element(values.begin(), values.end());
            if (*best_it < best_f) {
                best_f = *best_it;
                best_u = simplex[static_cast<std::size_t>(best_it - values.begin())];
            }
            result.restarts = round;
            if (!converged) {
                result.converged = false;
                break;
            }
            const bool stalled = round_start - best_f <= settings.f_tol * std::abs(best_f);
            if (round >= settings.max_restarts || (round > 0 && stalled)) {
                break;
            }
        }
    }

    result.x           = problem.to_x(best_u);
    result.value       = best_f;
    result.evaluations = problem.evaluations();
    return result;
}

} // namespace seaird
