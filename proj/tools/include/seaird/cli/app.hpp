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
#ifndef SEAIRD_CLI_APP_HPP
#define SEAIRD_CLI_APP_HPP

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace seaird::cli
{

enum ExitCode : int
{
    exit_ok              = 0,
    exit_validation      = 2,
    exit_below_threshold = 3,
    exit_numerical       = 4,
};

std::string_view tool_version();

/// Environment variable naming the directory searched for `default_data_file`.
inline constexpr const char* data_dir_env = "SEAIRD_DATA_DIR";
inline constexpr const char* default_data_file = "ecdc_daily.csv";

/**
 * Parses argv and runs one subcommand. Diagnostics go to `err`, progress
 * and stdout artifacts to `out`. Returns an ExitCode.
 */
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/**
 * Runs `command` with a resolved settings object, the same object recorded
 * as the config snapshot of a manifest.
 */
int execute(const std::string& command, const nlohmann::json& settings, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

/// RFC 4180 record terminator.
inline constexpr std::string_view csv_eol = "\r\n";

} // namespace seaird::cli

#endif // SEAIRD_CLI_APP_HPP
