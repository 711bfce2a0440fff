// Copyright 2026 The fockgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOCKGATE_TOOLS_CLI_HPP
#define FOCKGATE_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "fockgate/experiment.hpp"

namespace fockgate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitVerificationFailed = 3;

/// Parameters for one invocation. Each command reads the subset it needs.
struct RunConfig {
    std::string command;
    int n = 1;
    double eta = 1.0;
    double r = 0.0;
    double alpha = 1e4;
    double beta_min = 0.0;
    double beta_max = 3.0;
    int steps = 301;
    bool vacuum = false;
    double beta_eta = 1.0;
    long long trials = 100000;
    std::uint64_t seed = 42;
    std::string suite = "all";
    int cutoff = 0;  ///< 0 selects the recommended cutoff
    std::string output = "-";
    std::string format = "csv";
    std::string trials_csv;

    /// Throws ParameterError when a field is out of range for `command`.
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Evenly spaced grid; endpoints are exact.
std::vector<double> linear_grid(double lo, double hi, int steps);

std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_row_json(const SweepRow& row);
SweepRow sweep_row_from_json(const nlohmann::json& j);

/// Parses flat `key = value` lines. Blank lines and `#` comments are skipped.
/// Throws ParameterError on malformed lines.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);

/// Writes through a sibling temp file and renames it into place.
/// "-" writes to `stdout_stream`. Throws std::runtime_error on I/O failure.
void write_output(const std::string& path, const std::string& body, std::ostream& stdout_stream);

/// Entry point. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fockgate::cli

#endif  // FOCKGATE_TOOLS_CLI_HPP
