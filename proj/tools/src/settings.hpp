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
#ifndef SEAIRD_CLI_SETTINGS_HPP
#define SEAIRD_CLI_SETTINGS_HPP

#include <seaird/data_io.hpp>
#include <seaird/estimator.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace seaird::cli
{

using nlohmann::json;

/// Reads a JSON config file; every key must be a known setting.
json load_config(const std::filesystem::path& path);

/// Throws ValidationError on keys outside the setting vocabulary.
void check_keys(const json& settings);

/// Config values overlaid with flag values. Null flag entries are skipped.
json merge_settings(const json& config, const json& flags);

std::filesystem::path data_path(const json& settings);
std::filesystem::path out_dir(const json& settings);

/// Registry from the "registry" setting when present, otherwise the built-in one.
std::vector<CountryWindow> registry(const json& settings);

/// Window for the "country" setting, with train/test dates overridden by settings.
CountryWindow resolve_window(const json& settings);

BaselinePolicy baseline_policy(const json& settings);
std::vector<double> factors(const json& settings);

/// FitConfig for `window` with every estimator setting applied.
FitConfig fit_config(const json& settings, const CountryWindow& window);

/// Writes the estimator defaults into `settings` so a snapshot is self-contained.
void fill_fit_defaults(json& settings);

json window_json(const CountryWindow& w);
CountryWindow window_from_json(const json& j);

} // namespace seaird::cli

#endif // SEAIRD_CLI_SETTINGS_HPP
