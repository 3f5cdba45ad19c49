// Copyright 2026 The locoh Authors
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

#ifndef LOCOH_CLI_CLI_HPP
#define LOCOH_CLI_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "locoh/serialize.hpp"

namespace locoh::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitInvalid = 2,
    kExitOverflow = 3,
    kExitDegenerate = 4,
};

int exit_code_for(ErrorKind kind);

enum class ParamKind { kInt, kDouble, kString, kBool, kIntList, kDoubleList, kJson };

struct ParamDef {
    std::string name;
    ParamKind kind;
    Json fallback;  // null: no default
    std::string help;
};

/// Parameters an experiment accepts; flags and config keys share these names.
const std::vector<ParamDef> &experiment_params(const std::string &experiment);
const std::vector<std::string> &experiment_names();

/// Fills defaults and checks types. Unknown keys are rejected.
Json resolve_params(const std::string &experiment, const Json &given);

/// Runs one experiment on resolved parameters; returns the payload.
Json run_experiment(const std::string &experiment, const Json &params, int threads);

/// {experiment, id, timestamp, version, threads, config, payload}
Json make_record(const std::string &experiment, const Json &params, int threads, Json payload);

/// Sweep over the single parameter declared as {"range": [...]}.
Json run_sweep(const std::string &experiment, const Json &params, int threads);

/// CSV with a header row; one line per payload row (see README).
std::string record_to_csv(const Json &record);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::string &path, const std::string &content);

/// Full command line entry point. Diagnostics go to `err`; results to
/// `out` unless --output is given.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace locoh::cli

#endif
