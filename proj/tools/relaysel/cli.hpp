/*
   Copyright 2026 The relaysel Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relaysel::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitVerifyFailed = 2,
    kExitIo = 3,
};

enum class Mode { simulate, analytic, compare, verify };
enum class Format { csv, json };

struct PowerGrid {
    double start_db = 0.0;
    double stop_db = 30.0;
    double step_db = 2.0;

    std::vector<double> points() const;
};

struct ExperimentSpec {
    std::optional<Mode> mode;
    int users = 2;
    int relays = 4;
    double threshold_db = 5.0;
    PowerGrid grid;
    std::optional<double> q_db;  ///< unset: Q follows P
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::vector<std::string> schemes{"ors", "srs", "naive", "random"};
    std::optional<std::pair<double, double>> slope_window_db;
    bool ranks = false;
    unsigned workers = 1;
    std::string out;  ///< empty: stdout
    Format format = Format::csv;
    int verify_max_users = 3;
    int verify_max_relays = 5;
    std::uint64_t verify_matrices = 10000;
};

/// Bad flag, spec file or value. Maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

PowerGrid parse_grid(const std::string& text);
std::pair<double, double> parse_window(const std::string& text);
std::vector<std::string> parse_scheme_list(const std::string& text);
Mode parse_mode(const std::string& text);

/// Applies one key=value setting; keys match the long flag names with '-'
/// or '_' separators.
void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value);

/// Reads a key=value file; '#' starts a comment.
void load_spec_file(ExperimentSpec& spec, const std::string& path);

/// Throws UsageError on an inconsistent spec.
void validate(const ExperimentSpec& spec);

struct Row {
    std::optional<double> p_db;
    std::string scheme;
    std::string series;
    std::optional<long> user;
    std::optional<double> value;
    std::optional<double> std_err;
    std::uint64_t trials = 0;
    std::string flag = "ok";
};

struct RunOutput {
    std::vector<Row> rows;
    std::string text;  ///< rendered in the requested format
    int exit_code = kExitOk;
};

/// Runs a validated spec. Throws UsageError for combinations the library
/// rejects.
RunOutput execute(const ExperimentSpec& spec);

std::string render_csv(const std::vector<Row>& rows);
std::string format_number(double v);

/// Full command-line entry point. Writes results to --out or `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relaysel::cli
