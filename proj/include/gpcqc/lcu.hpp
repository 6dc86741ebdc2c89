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

#ifndef GPCQC_LCU_HPP
#define GPCQC_LCU_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpcqc/circuit.hpp"
#include "gpcqc/gpc.hpp"
#include "gpcqc/indexset.hpp"
#include "gpcqc/statevector.hpp"

namespace gpcqc {

struct LcuTerm {
    double magnitude = 0.0;
    int sign = 1;     ///< +1 or -1
    Circuit circuit;  ///< over the data register; carries PHASE(pi) when sign = -1
};

/// sum_j sign_j magnitude_j U_j over a common data register.
struct LcuPlan {
    ExpansionKind kind = ExpansionKind::Chebyshev;
    std::vector<LcuTerm> terms;
    std::vector<MultiIndex> indices;  ///< source index of each term, empty for hand-built plans
    std::size_t data_width = 0;
    std::size_t ancilla_count = 0;    ///< ceil(log2 T)
    double l1_norm = 0.0;

    std::size_t term_count() const noexcept { return terms.size(); }
    std::size_t total_width() const noexcept { return data_width + ancilla_count; }
};

/// Builds a plan from unsigned sub-circuits: each circuit is widened to the
/// common data width and a PHASE(pi) is appended when sign = -1.
LcuPlan make_lcu_plan(std::vector<LcuTerm> terms, ExpansionKind kind = ExpansionKind::Chebyshev,
                      std::vector<MultiIndex> indices = {});

/// Checks the plan invariants (magnitudes, widths, ancilla count, l1 norm).
void validate_plan(const LcuPlan &plan);

/// ceil(log2 T), 0 for T <= 1.
std::size_t ancilla_count_for(std::size_t terms);

/// Unitary on 2^ceil(log2 T) amplitudes whose first column is
/// sqrt(a_j / ||a||_1) (zero padded); the remaining columns complete it by
/// Gram-Schmidt over the canonical basis vectors in increasing order.
MatrixXc build_state_prep(std::span<const double> magnitudes);

/// sum_j U_j (x) |j><j| on data qubits 0..d-1 and ancilla qubits d..d+a-1
/// (bit b of j on qubit d+b). Identity sub-circuits emit no gate.
Circuit build_controlled_unitary(const LcuPlan &plan, bool enforce_cap = true);

/// (I (x) F^dagger) U_c (I (x) F).
Circuit assemble_wlcu(const LcuPlan &plan, bool enforce_cap = true);

struct ShotSpec {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

struct HadamardResult {
    double exact = 0.0;  ///< Re <Psi| w |Psi>
    double p0 = 0.0;     ///< (1 + exact) / 2
    std::optional<double> p0_hat;
    std::optional<double> estimate;  ///< 2 p0_hat - 1
};

/// H-controlled(w)-H on one extra qubit (qubit 0; w is shifted up by one).
/// Shots draw Binomial(shots, P(0)) from a mt19937_64 seeded with seed.
HadamardResult hadamard_test(const Circuit &w, const StateVector &input, std::span<const double> y = {},
                             std::optional<ShotSpec> shots = std::nullopt);

/// Chebyshev expansions compile via tensor_chebyshev_circuit on classical
/// coefficients, Taylor expansions via monomial_circuit. Term order is the
/// canonical index order. Exactly zero coefficients are dropped.
LcuPlan compile_expansion(const GpcExpansion &expansion);

enum class EvalMode { Amplitude, Hadamard, HadamardShots };

const char *to_string(EvalMode mode);

struct EvalOptions {
    EvalMode mode = EvalMode::Amplitude;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

struct EvalResult {
    double value = 0.0;
    double stderr_value = 0.0;  ///< ||a||_1 / sqrt(shots) in shot mode, 0 otherwise
};

/// Reusable evaluator holding the assembled W_LCU of one plan.
class LcuEvaluator {
  public:
    explicit LcuEvaluator(const LcuPlan &plan);
    EvalResult evaluate(std::span<const double> y, const EvalOptions &options = {}) const;
    const Circuit &wlcu() const noexcept { return wlcu_; }
    double l1_norm() const noexcept { return l1_; }

  private:
    Circuit wlcu_;
    double l1_;
};

/// ||a||_1 times the projected matrix element <0,0| W_LCU(y) |0,0>.
EvalResult evaluate(const LcuPlan &plan, std::span<const double> y, const EvalOptions &options = {});

struct ReferenceFormula {
    std::string quantity;  ///< "width" or "depth"
    std::string regime;
    std::string formula;
    double value = 0.0;
};

struct ResourceReport {
    std::size_t data_width = 0;
    std::size_t ancilla_width = 0;
    std::size_t ir_depth = 0;
    std::size_t modeled_depth = 0;
    std::size_t size = 0;
    std::size_t terms = 0;
    double l1_norm = 0.0;
    std::size_t max_nu0 = 0;
    std::uint64_t max_nu1 = 0;
    std::uint32_t max_nuinf = 0;
    std::size_t max_term_depth = 0;
    std::vector<ReferenceFormula> reference;
};

ResourceReport resource_report(const LcuPlan &plan, const CostModel &model = {});

}  // namespace gpcqc

#endif  // GPCQC_LCU_HPP
