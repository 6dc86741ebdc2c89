// Copyright 2026 The gpcqc Authors
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

#ifndef GPCQC_CLI_HPP
#define GPCQC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gpcqc/experiments.hpp"
#include "gpcqc/serialize.hpp"

namespace gpcqc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitWidthCap = 3;
inline constexpr int kExitVerify = 4;

/// Everything a run depends on. Output location and worker count are not
/// part of the effective config and do not enter the config hash.
struct RunConfig {
    Json model;  ///< model configuration object, null when absent
    SweepConfig sweep;
    std::uint64_t shots = 0;
    std::string coeffs_path;
    std::string plan_path;
    std::vector<double> y;
    std::string out_dir = ".";
    std::size_t threads = 0;

    /// Overrides the fields present in a --config JSON object. A "model_file"
    /// key loads the model from a file.
    void apply(const Json &overrides);
};

/// Runs one subcommand (expand | circuit | eval | sweep | verify). args
/// excludes the program name. Returns the process exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace gpcqc

#endif  // GPCQC_CLI_HPP
