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

#ifndef GPCQC_EXPERIMENTS_HPP
#define GPCQC_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpcqc/circuit.hpp"
#include "gpcqc/gpc.hpp"
#include "gpcqc/indexset.hpp"
#include "gpcqc/models.hpp"

namespace gpcqc {

enum class SelectorKind { Apriori, Greedy, Tensor };
enum class Backend { Classical, Circuit };

const char *to_string(SelectorKind kind);
const char *to_string(Backend backend);

/// Parse "apriori" | "greedy" | "tensor", "classical" | "circuit",
/// "cheb" | "chebyshev" | "taylor". Anything else is a ConfigError.
SelectorKind parse_selector(const std::string &text);
Backend parse_backend(const std::string &text);
ExpansionKind parse_kind(const std::string &text);

struct SweepConfig {
    SelectorKind selector = SelectorKind::Apriori;
    std::vector<std::size_t> n_list;    ///< apriori and greedy
    std::vector<std::uint32_t> k_list;  ///< tensor: n = (k+1)^d
    std::size_t tensor_dims = 0;        ///< d for the tensor selector, 0 = the model's finite dimension
    ExpansionKind kind = ExpansionKind::Chebyshev;
    Backend backend = Backend::Classical;
    std::size_t samples = 2000;
    std::uint64_t seed = 0;
    std::size_t pool_factor = 8;     ///< greedy candidates = select_apriori(pool_factor * n_max)
    std::size_t nodes_per_dim = 0;   ///< quadrature nodes when needed, 0 = automatic
    bool timing = false;             ///< wall_time_ms stays 0 unless set
    std::size_t width_cap = 24;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

struct SweepRow {
    std::size_t n = 0;
    double l2_error = 0.0;
    double l2_stderr = 0.0;
    double linf_error = 0.0;
    std::size_t data_width = 0;
    std::size_t ancilla_width = 0;
    std::size_t ir_depth = 0;
    std::size_t modeled_depth = 0;
    std::size_t size = 0;
    std::uint64_t max_nu1 = 0;
    double wall_time_ms = 0.0;
    bool width_skipped = false;       ///< circuit backend only; error columns are NaN
    std::optional<double> l2_exact;   ///< Parseval-based L2 error when the squared norm is known
};

struct SweepResult {
    SweepConfig config;
    std::string model_id;
    std::size_t mc_samples = 0;
    std::size_t corner_samples = 0;
    std::vector<SweepRow> rows;
};

/// Builds the index sets, coefficients and (for the circuit backend) LCU
/// plans of every row and measures the errors on one seeded sample set.
SweepResult sweep(const Model &model, const SweepConfig &config);

/// Expansion of the last row of config (largest n or k).
GpcExpansion expand(const Model &model, const SweepConfig &config);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y = intercept + slope x. Needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

enum class RateLaw { Algebraic, Exponential };
enum class ErrorColumn { L2, Linf };

struct RateFit {
    std::string law;            ///< "algebraic" or "exponential(d=..)"
    double slope_or_gamma = 0.0;
    double r2 = 0.0;
    double C = 0.0;
    std::size_t n_used = 0;
};

/// Algebraic: log err = log C + slope log n. Exponential: log err =
/// log C - gamma n^(1/d). Rows that are width-skipped or have a non-positive
/// error are unusable; fewer than 4 usable rows is a DomainError.
RateFit fit_rate(const SweepResult &result, RateLaw law, std::size_t d = 1,
                 ErrorColumn column = ErrorColumn::L2);
RateFit fit_rate(std::span<const double> n, std::span<const double> err, RateLaw law, std::size_t d = 1);

/// CSV with a leading '#' metadata line followed by the header
/// n,l2_error,linf_error,data_width,ancilla_width,ir_depth,modeled_depth,size,max_nu1,wall_time_ms
std::string sweep_csv(const SweepResult &result, const std::string &metadata);

struct VerifyOptions {
    std::uint64_t seed = 0;
    bool corrupt_onb_factor = false;  ///< fault injection for the Parseval check
};

struct VerifyCheck {
    std::string module;
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<VerifyCheck> checks;
    bool passed() const;
};

/// Invariant battery over all modules with the given seed.
VerifyReport verify_suite(const VerifyOptions &options = {});

}  // namespace gpcqc

#endif  // GPCQC_EXPERIMENTS_HPP
