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
#ifndef SEAIRD_OPTIMIZE_HPP
#define SEAIRD_OPTIMIZE_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace seaird
{

/// Closed interval [lo, hi]. lo == hi pins the coordinate.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    bool fixed() const
    {
        return lo == hi;
    }
    bool contains(double x) const
    {
        return x >= lo && x <= hi;
    }
};

struct NelderMeadSettings {
    std::size_t max_evaluations = 20000;
    double f_tol                = 1e-10; ///< relative spread of simplex values
    double x_tol                = 1e-7; ///< simplex diameter in transformed coordinates
    double initial_step         = 1.0; ///< simplex edge in transformed coordinates
    int max_restarts            = 4; ///< re-inflations of a converged simplex around its best vertex

    void validate() const;
};

struct MinimizeResult {
    std::vector<double> x;
    double value            = 0.0;
    std::size_t evaluations = 0;
    int restarts            = 0;
    bool converged          = false; ///< false if the evaluation budget ran out first
};

using Objective = std::function<double(std::span<const double>)>;

/**
 * Box-constrained Nelder-Mead.
 *
 * Each free coordinate is mapped through x = lo + (hi - lo) / (1 + exp(-u)),
 * and the simplex moves in u. Every point handed to `f` lies inside the box.
 * Nonfinite values of `f` count as +infinity. The expansion/contraction
 * coefficients adapt to the dimension for n > 2.
 *
 * Throws ValidationError for an empty or inconsistent box and NumericalError
 * when `f` is not finite at the starting point.
 */
MinimizeResult minimize(const Objective& f, std::span<const double> x_init, std::span<const Interval> bounds,
                        const NelderMeadSettings& settings = {});

/// Logistic box map and its inverse, exposed for tests.
double to_box(double u, const Interval& box);
double from_box(double x, const Interval& box);

} // namespace seaird

#endif // SEAIRD_OPTIMIZE_HPP
