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

#ifndef GPCQC_SERIALIZE_HPP
#define GPCQC_SERIALIZE_HPP

#include <string>
#include <string_view>

#include "json.hpp"

#include "gpcqc/circuit.hpp"
#include "gpcqc/experiments.hpp"
#include "gpcqc/gpc.hpp"
#include "gpcqc/indexset.hpp"
#include "gpcqc/lcu.hpp"
#include "gpcqc/models.hpp"

namespace gpcqc {

/// Keys keep insertion order so that dumps are stable and readable.
using Json = nlohmann::ordered_json;

/// [[j, v], ...] with 1-based coordinates.
Json to_json(const MultiIndex &nu);
MultiIndex multi_index_from_json(const Json &j);

/// [{"idx": [[j, v], ...]}, ...] in canonical order.
Json to_json(const IndexSet &set);
IndexSet index_set_from_json(const Json &j);

/// {"kind", "basis", "model_id", "quadrature_warning", "coeffs": [[[[j, v], ...], value], ...]}
Json to_json(const GpcExpansion &expansion);
GpcExpansion expansion_from_json(const Json &j);

/// '#' metadata line, then nu,nu0,nu1,nuinf,coeff with nu written as "j:v;j:v".
std::string expansion_csv(const GpcExpansion &expansion, const std::string &metadata);

/// Gates as {"kind", "targets", "param", ...}. A bound angle is written as
/// {"scale": s, "arg": "y[j]"} meaning s * arccos(y_j) with 1-based j.
Json to_json(const Circuit &circuit);
Circuit circuit_from_json(const Json &j);

Json to_json(const Metrics &m);

Json to_json(const LcuPlan &plan);
LcuPlan plan_from_json(const Json &j);

Json to_json(const ResourceReport &report);
Json to_json(const RateFit &fit);
Json to_json(const VerifyReport &report);

/// Model configuration:
///   {"type": "rational", "theta", "c", "b_rule": {"c_b", "s"}, "D", "active_dims"}
///   {"type": "diffusion1d", "a0", "b_rule": {"c_b", "s"}, "D", "h", "kappa"}
/// The rational model also accepts an explicit "b" array instead of b_rule.
/// Errors are ConfigError naming the offending field.
Model model_from_json(const Json &j);
Json model_to_json(const Model &model);

/// Parses JSON text, turning parse failures into ConfigError tagged with what.
Json parse_json(std::string_view text, const std::string &what);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// sha256_hex of the compact dump of config.
std::string config_hash(const Json &config);

}  // namespace gpcqc

#endif  // GPCQC_SERIALIZE_HPP
