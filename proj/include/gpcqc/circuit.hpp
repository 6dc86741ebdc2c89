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

#ifndef GPCQC_CIRCUIT_HPP
#define GPCQC_CIRCUIT_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gpcqc {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using MatrixXc = Eigen::MatrixXcd;

/// Rotation angle: either a literal, or scale * arccos(y[slot]) bound to a
/// parameter coordinate at instantiation time.
struct Param {
    double value = 0.0;
    std::int32_t slot = -1;  ///< 0-based coordinate index into y, -1 for a literal

    static Param literal(double angle) { return {angle, -1}; }
    static Param arccos_of(std::int32_t slot, double scale) { return {scale, slot}; }

    bool bound() const noexcept { return slot >= 0; }
    /// Throws DomainError when a bound slot is missing from y or |y[slot]| > 1.
    double resolve(std::span<const double> y) const;
    bool operator==(const Param &) const = default;
};

enum class GateKind {
    RX,         ///< exp(-i theta X / 2)
    RY,         ///< exp(-i theta Y / 2)
    RZ,         ///< exp(-i theta Z / 2)
    H,
    X,
    Phase,      ///< global phase e^{i theta}; a relative phase when controlled
    Generic1Q,  ///< arbitrary 2x2 unitary
    Unitary,    ///< arbitrary 2^k x 2^k unitary on k target qubits
    Controlled  ///< block circuit applied iff the controls match the pattern
};

const char *to_string(GateKind kind);

class Circuit;

struct Gate {
    GateKind kind = GateKind::H;
    /// Target qubits. For Unitary, bit b of the matrix index maps to targets[b].
    /// Empty for Phase and Controlled.
    std::vector<std::uint32_t> targets;
    Param param;
    std::shared_ptr<const MatrixXc> matrix;  ///< Generic1Q / Unitary
    std::shared_ptr<const Circuit> block;    ///< Controlled; same qubit numbering as the host
    std::vector<std::uint32_t> controls;
    std::vector<bool> pattern;               ///< pattern[i] is the required value of controls[i]
    /// Number of real parameters this gate contributes to the circuit size.
    std::uint32_t counted_params = 0;

    /// All qubits the gate acts on (targets, controls and block qubits), sorted.
    std::vector<std::uint32_t> qubits() const;
};

/// Ordered gate list over a fixed number of qubits. Qubit q is bit q of the
/// computational basis index (qubit 0 is least significant).
class Circuit {
  public:
    explicit Circuit(std::size_t num_qubits = 0) : num_qubits_(num_qubits) {}

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::span<const Gate> ops() const noexcept { return ops_; }
    bool empty() const noexcept { return ops_.empty(); }

    /// Validates qubit indices (and matrix unitarity to 1e-12) and appends.
    Circuit &append(Gate gate);

    Circuit &rx(std::uint32_t q, Param p, bool counted = true);
    Circuit &ry(std::uint32_t q, Param p, bool counted = true);
    Circuit &rz(std::uint32_t q, Param p, bool counted = true);
    Circuit &h(std::uint32_t q);
    Circuit &x(std::uint32_t q);
    Circuit &phase(double theta);
    Circuit &generic1q(std::uint32_t q, const Matrix2c &m);
    Circuit &unitary(std::vector<std::uint32_t> targets, const MatrixXc &m, std::uint32_t counted_params = 0);
    Circuit &controlled(const Circuit &block, std::vector<std::uint32_t> controls, std::vector<bool> pattern);

    /// Sum of counted parameters over all gates (blocks included).
    std::size_t param_count() const;
    /// One past the highest bound parameter slot, 0 when unparameterized.
    std::size_t slot_count() const;

    /// Same gates on qubits q -> map[q] in a register of new_width qubits.
    Circuit remapped(std::span<const std::uint32_t> map, std::size_t new_width) const;
    /// Qubits shifted by offset in a register of new_width qubits.
    Circuit shifted(std::uint32_t offset, std::size_t new_width) const;
    /// Same gates in a wider register.
    Circuit widened(std::size_t new_width) const;
    /// Every bound slot s is rebound to slot_map[s].
    Circuit rebound(std::span<const std::int32_t> slot_map) const;

  private:
    std::size_t num_qubits_;
    std::vector<Gate> ops_;
};

/// Concatenation of ops; width is the larger of the two.
Circuit compose(const Circuit &first, const Circuit &second);

/// Qubit-disjoint juxtaposition: circuit i occupies the qubits after those of
/// circuits 0..i-1.
Circuit tensor(std::span<const Circuit> circuits);

/// Depth charged for controlled and dense gates.
struct CostModel {
    /// Modeled depth of a controlled gate is depth(block) + ctrl_overhead * #controls.
    double ctrl_overhead = 2.0;
};

struct Metrics {
    std::size_t width = 0;
    std::size_t depth = 0;          ///< greedy earliest-fit layering of the IR
    std::size_t size = 0;           ///< parameter count
    std::size_t modeled_depth = 0;  ///< depth under the cost model
    bool operator==(const Metrics &) const = default;
};

/// IR depth charges 1 per gate (0 for a global phase), depth(block) for a
/// controlled gate. Modeled depth additionally charges ctrl_overhead per
/// control and 2^k for a dense k-qubit unitary.
Metrics metrics(const Circuit &circuit, const CostModel &model = {});

/// The 2x2 matrix of a single-qubit gate at parameter point y.
Matrix2c gate_matrix(const Gate &gate, std::span<const double> y = {});

}  // namespace gpcqc

#endif  // GPCQC_CIRCUIT_HPP
