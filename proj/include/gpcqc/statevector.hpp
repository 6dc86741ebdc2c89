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

#ifndef GPCQC_STATEVECTOR_HPP
#define GPCQC_STATEVECTOR_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "gpcqc/circuit.hpp"

namespace gpcqc {

/// Largest register the dense simulator accepts (2^24 amplitudes, 256 MiB).
inline constexpr std::size_t kMaxSimQubits = 24;

class StateVector {
  public:
    /// |0...0> on num_qubits qubits. Throws WidthCapError above kMaxSimQubits.
    explicit StateVector(std::size_t num_qubits = 0);
    /// Length must be a power of two and the norm 1 to 1e-12.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);
    /// Computational basis state |index>.
    static StateVector basis(std::size_t num_qubits, std::size_t index);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::span<Complex> amplitudes() noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }
    double norm() const;

  private:
    std::size_t num_qubits_;
    std::vector<Complex> amps_;
};

/// Applies the gates of circuit in order; state width must equal the circuit width.
void apply(const Circuit &circuit, StateVector &state, std::span<const double> y = {});

StateVector run(const Circuit &circuit, const StateVector &input, std::span<const double> y = {});

/// <0...0| C(y) |0...0>.
Complex amp_00(const Circuit &circuit, std::span<const double> y = {});

/// P(qubit 0 = 0) - P(qubit 0 = 1).
double z0_expectation(const StateVector &state);
double z0_expectation(const Circuit &circuit, std::span<const double> y = {});

/// Dense 2^w x 2^w matrix of the circuit (column i = run on |i>).
MatrixXc circuit_matrix(const Circuit &circuit, std::span<const double> y = {});

}  // namespace gpcqc

#endif  // GPCQC_STATEVECTOR_HPP
