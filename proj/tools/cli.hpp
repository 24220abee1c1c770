// Copyright 2026 The AGF Workbench Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace agf::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitPrecondition = 2,
    kExitParameter = 3,  // also planning, configuration and format errors
    kExitCapacity = 4,
    kExitValidation = 5,  // a validation suite or harness verdict failed
};

/// Every setting a subcommand reads. A --config JSON file uses the same
/// field names; explicit flags override it.
struct CliConfig {
    std::string subcommand;
    std::string channel = "identity";
    int d = 2;
    int max_dim = 64;
    double epsilon = 0.05;
    double delta = 0.1;
    std::string algorithm = "kwise-design";
    std::string ensemble = "clifford1q";
    std::string seed;
    std::string output;
    std::string format;  // json | csv | table; empty picks the subcommand default
    bool waive_preconditions = false;
    bool check_assumptions = false;
    bool emit_trials = false;
    bool timing = false;
    std::uint64_t dense_cap = 4096;
    unsigned jobs = 1;
    std::optional<double> claimed_lambda;
    std::optional<std::uint64_t> n_override;
    // harness
    std::uint64_t repeats = 500;
    // check-design
    std::vector<int> t_list{1, 2};
    // validate
    std::string suite;
    std::vector<std::string> channels;
    std::vector<int> dims;
    std::uint64_t samples = 100000;
    std::uint64_t tail_trials = 2000;
    std::uint64_t prop1_trials = 20000;
    std::uint64_t t_average = 16;
    double delta_prime = 0.05;
    // gen-bits and validate --suite prg
    std::uint64_t k = 4;
    std::uint64_t n = 16;
    std::string theta = "0.25";
};

/// Reads a JSON config; unknown keys and ill-typed values throw ConfigError.
CliConfig load_config(const std::string &path, CliConfig base = {});

int cmd_estimate(const CliConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_harness(const CliConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_check_design(const CliConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_validate(const CliConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_gen_bits(const CliConfig &cfg, std::ostream &out, std::ostream &err);

/// Parses arguments (args[0] is the program name) and dispatches.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace agf::cli
