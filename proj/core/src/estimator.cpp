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
#include "seaird/estimator.hpp"
#include "seaird/error.hpp"

#include "random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

namespace seaird
{

namespace
{

constexpr std::size_t n_params = ParameterVector::size;

std::size_t parameter_index(std::string_view name)
{
    for (std::size_t i = 0; i < n_params; ++i) {
        if (ParameterVector::names[i] == name) {
            return i;
        }
    }
    throw ValidationError("unknown parameter '" + std::string(name) + "'");
}

/// n stratified draws on [0,1) per coordinate, strata shuffled independently.
std::vector<std::vector<double>> latin_hypercube(std::size_t n, std::size_t dims, detail::Rng& rng)
{
    std::vector<std::vector<double>> points(n, std::vector<double>(dims));
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < dims; ++j) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = n; i > 1; --i) {
            std::swap(perm[i - 1], perm[rng.below(i)]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            points[i][j] = (static_cast<double>(perm[i]) + rng.uniform()) / static_cast<double>(n);
        }
    }
    return points;
}

unsigned worker_count(unsigned requested, std::size_t jobs)
{
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

} // namespace

Interval& ParameterBounds::operator[](std::string_view name)
{
    return box[parameter_index(name)];
}

const Interval& ParameterBounds::operator[](std::string_view name) const
{
    return box[parameter_index(name)];
}

bool ParameterBounds::contains(const ParameterVector& p) const
{
    const auto v = p.to_array();
    for (std::size_t i = 0; i < n_params; ++i) {
        if (!box[i].contains(v[i])) {
            return false;
        }
    }
    return true;
}

void ParameterBounds::validate() const
{
    for (std::size_t i = 0; i < n_params; ++i) {
        const auto& b = box[i];
        if (!(b.lo <= b.hi)) {
            throw ValidationError("empty bounds for " + std::string(ParameterVector::names[i]));
        }
    }
    ParameterVector lo, hi;
    std::array<double, n_params> l{}, h{};
    for (std::size_t i = 0; i < n_params; ++i) {
        l[i] = box[i].lo;
        h[i] = box[i].hi;
    }
    lo = ParameterVector::from_array(l);
    hi = ParameterVector::from_array(h);
    try {
        lo.validate();
        hi.validate();
    }
    catch (const ValidationError& e) {
        throw ValidationError(std::string("bounds leave the parameter domain: ") + e.what());
    }
}

void FitConfig::validate() const
{
    if (!(train_start < train_end && train_end < test_end)) {
        throw ValidationError("windows need train_start < train_end < test_end, got " + train_start.iso() + ", " +
                              train_end.iso() + ", " + test_end.iso());
    }
    if (!(tau > 0.0 && tau < 1.0)) {
        throw ValidationError("tau must lie in (0, 1), got " + std::to_string(tau));
    }
    if (n_starts < 1) {
        throw ValidationError("n_starts must be >= 1");
    }
    if (max_retries < 0) {
        throw ValidationError("max_retries must be >= 0");
    }
    if (!(initial_state_multiple >= 0.0) || !std::isfinite(initial_state_multiple)) {
        throw ValidationError("initial_state_multiple must be finite and >= 0");
    }
    if (weights) {
        weights->validate();
    }
    bounds.validate();
    optimizer.validate();
    integration.validate();
}

FitProblem::FitProblem(const ObservationSeries& data, const DemographicConstants& demographics,
                       const FitConfig& cfg)
    : m_cfg(cfg)
    , m_demographics(demographics)
{
    m_cfg.validate();
    m_demographics.validate();
    data.validate();

    m_full  = data.slice(cfg.train_start, cfg.test_end);
    m_train = m_full.slice(cfg.train_start, cfg.train_end);

    const auto& first = m_train.values.front();
    m_i0              = first.cum_infected - m_train.case_baseline;
    m_d0              = first.cum_deaths;
    const double N    = m_demographics.population;
    if (!(N > m_full.values.back().cum_infected)) {
        throw ValidationError("population " + std::to_string(N) + " does not exceed cumulative cases");
    }

    if (cfg.weights) {
        m_weights = *cfg.weights;
    }
    else {
        const auto& last = m_train.values.back();
        m_weights.infected = last.cum_infected > 0.0 ? 1.0 / last.cum_infected : 0.0;
        m_weights.deaths   = last.cum_deaths > 0.0 ? 1.0 / last.cum_deaths : 0.0;
        if (m_weights.infected == 0.0 && m_weights.deaths == 0.0) {
            throw DataError("training window has neither cases nor deaths");
        }
    }

    for (std::size_t i = 0; i < n_params; ++i) {
        m_bounds[i] = cfg.bounds.box[i];
    }
    // E, A, R; a third of the non-anchored population each keeps S(0) > 0
    const double room = (N - m_i0 - m_d0) / 3.0 * (1.0 - 1e-9);
    const double cap  = std::min(cfg.initial_state_multiple * m_i0, room);
    for (std::size_t k = 0; k < 3; ++k) {
        m_bounds[n_params + k] = {0.0, std::max(cap, 0.0)};
    }
}

ParameterVector FitProblem::parameters(std::span<const double> z) const
{
    std::array<double, n_params> v{};
    std::copy_n(z.begin(), n_params, v.begin());
    return ParameterVector::from_array(v);
}

StateVector FitProblem::initial_state(std::span<const double> z) const
{
    StateVector x;
    x.E = z[n_params];
    x.A = z[n_params + 1];
    x.R = z[n_params + 2];
    x.I = m_i0;
    x.D = m_d0;
    x.S = m_demographics.population - x.E - x.I - x.A - x.R - x.D;
    return x;
}

std::array<double, FitProblem::dimension> FitProblem::encode(const ParameterVector& phi, const StateVector& x0) const
{
    std::array<double, dimension> z{};
    const auto p = phi.to_array();
    std::copy(p.begin(), p.end(), z.begin());
    z[n_params]     = x0.E;
    z[n_params + 1] = x0.A;
    z[n_params + 2] = x0.R;
    return z;
}

ObservationSeries FitProblem::predict(std::span<const double> z, int horizon) const
{
    auto out = predict_observables(parameters(z), initial_state(z), m_demographics, horizon, m_cfg.integration,
                                   m_train.start_date);
    for (auto& v : out.values) {
        v.cum_infected += m_train.case_baseline;
    }
    out.case_baseline = m_train.case_baseline;
    return out;
}

double FitProblem::objective(std::span<const double> z) const
{
    try {
        const auto y_hat = predict(z, static_cast<int>(m_train.size()) - 1);
        return seaird::objective(m_train, y_hat, m_weights, m_cfg.weighting);
    }
    catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
}

std::vector<std::array<double, FitProblem::dimension>> FitProblem::starting_points(int attempt) const
{
    const auto n = static_cast<std::size_t>(m_cfg.n_starts);
    detail::Rng phi_rng(m_cfg.seed, 0);
    detail::Rng state_rng(m_cfg.seed, static_cast<std::uint64_t>(attempt) + 1);
    const auto phi_unit   = latin_hypercube(n, n_params, phi_rng);
    const auto state_unit = latin_hypercube(n, 3, state_rng);

    std::vector<std::array<double, dimension>> starts(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dimension; ++j) {
            const double u = j < n_params ? phi_unit[i][j] : state_unit[i][j - n_params];
            starts[i][j]   = m_bounds[j].lo + (m_bounds[j].hi - m_bounds[j].lo) * u;
        }
    }
    return starts;
}

MultiStartResult multi_start(const FitProblem& problem, std::span<const std::array<double, FitProblem::dimension>> starts,
                             const FitConfig& cfg, int attempt)
{
    if (starts.empty()) {
        throw ValidationError("multi-start needs at least one starting point");
    }
    struct Outcome {
        MinimizeResult result;
        StartRecord record;
    };
    std::vector<Outcome> outcomes(starts.size());
    const Objective f = [&problem](std::span<const double> z) { return problem.objective(z); };

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < starts.size(); i = next++) {
            auto& out             = outcomes[i];
            out.record.attempt    = attempt;
            out.record.start      = static_cast<int>(i);
            out.record.initial_value = problem.objective(starts[i]);
            if (!std::isfinite(out.record.initial_value)) {
                out.record.diverged = true;
                out.record.value    = std::numeric_limits<double>::infinity();
                continue;
            }
            out.result             = minimize(f, starts[i], problem.bounds(), cfg.optimizer);
            out.record.value       = out.result.value;
            out.record.evaluations = out.result.evaluations;
            out.record.converged   = out.result.converged;
        }
    };
    const unsigned workers = worker_count(cfg.threads, starts.size());
    if (workers <= 1) {
        work();
    }
    else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }

    MultiStartResult best;
    best.value    = std::numeric_limits<double>::infinity();
    bool found    = false;
    for (const auto& out : outcomes) {
        best.records.push_back(out.record);
        if (!out.record.diverged && (!found || out.result.value < best.value)) {
            found      = true;
            best.value = out.result.value;
            std::copy(out.result.x.begin(), out.result.x.end(), best.best.begin());
        }
    }
    if (!found || !std::isfinite(best.value)) {
        throw NumericalError("every start diverged: objective not finite");
    }
    return best;
}

MultiStartResult multi_start(const ObservationSeries& data, const DemographicConstants& d, const FitConfig& cfg)
{
    const FitProblem problem(data, d, cfg);
    const auto starts = problem.starting_points(0);
    return multi_start(problem, starts, cfg, 0);
}

FitResult fit(const ObservationSeries& data, const DemographicConstants& d, const FitConfig& cfg)
{
    const FitProblem problem(data, d, cfg);
    const int horizon    = static_cast<int>(problem.full().size()) - 1;
    const auto n_train   = static_cast<std::ptrdiff_t>(problem.train().size());
    const Date test_from = cfg.train_end + 1;

    std::optional<FitResult> best;
    std::vector<StartRecord> log;
    int attempt = 0;
    for (;; ++attempt) {
        const auto starts = problem.starting_points(attempt);
        auto ms           = multi_start(problem, starts, cfg, attempt);
        log.insert(log.end(), ms.records.begin(), ms.records.end());

        FitResult r;
        r.phi             = problem.parameters(ms.best);
        r.x0              = problem.initial_state(ms.best);
        r.objective_value = ms.value;
        r.weights         = problem.weights();
        r.observed        = problem.full();
        r.predicted       = problem.predict(ms.best, horizon);

        ObservationSeries pred_train = r.predicted, pred_test = r.predicted;
        pred_train.values.resize(static_cast<std::size_t>(n_train));
        pred_test                 = r.predicted.slice(test_from, cfg.test_end);
        const auto observed_test  = r.observed.slice(test_from, cfg.test_end);
        r.r2_train                = r_squared(problem.train(), pred_train);
        r.r2_test                 = r_squared(observed_test, pred_test);
        r.gate_value              = r.r2_test.gate(cfg.r2_pooling);
        r.accepted                = r.gate_value >= cfg.tau;

        const bool better = !best || r.gate_value > best->gate_value ||
                            (r.gate_value == best->gate_value && r.objective_value < best->objective_value);
        if (better) {
            best = std::move(r);
        }
        if (best->accepted || attempt == cfg.max_retries) {
            break;
        }
    }
    best->n_restarts_used = attempt;
    best->diagnostics     = std::move(log);
    return *best;
}

} // namespace seaird
