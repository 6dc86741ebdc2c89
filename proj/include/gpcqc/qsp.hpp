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

#ifndef GPCQC_QSP_HPP
#define GPCQC_QSP_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "gpcqc/circuit.hpp"
#include "gpcqc/indexset.hpp"

namespace gpcqc {

/// W(x) = [[x, i sqrt(1-x^2)], [i sqrt(1-x^2), x]] = RX(-2 arccos x).
Matrix2c signal_operator(double x);

/// e^{i phi_0 Z} prod_{j=1..l} W(x) e^{i phi_j Z} for phases (phi_0..phi_l).
Matrix2c qsp_unitary(std::span<const double> phases, double x);

/// Width-1 circuit of the same product with the signal bound to y[slot].
/// Phase gates are counted parameters, signal rotations are not.
Circuit qsp_circuit(std::span<const double> phases, std::int32_t slot = 0);

/// Complex polynomial stored either in the monomial basis (coeffs[k] multiplies
/// x^k) or in the Chebyshev basis (coeffs[k] multiplies T~_k(x)). Degree and
/// parity read off the coefficient list identically in both bases.
struct ComplexPolynomial {
    enum class Basis { Monomial, Chebyshev };
    Basis basis = Basis::Monomial;
    std::vector<Complex> coeffs;

    static ComplexPolynomial monomial(std::vector<Complex> c) { return {Basis::Monomial, std::move(c)}; }
    static ComplexPolynomial chebyshev(std::vector<Complex> c) { return {Basis::Chebyshev, std::move(c)}; }
};

/// Horner in the monomial basis, Clenshaw in the Chebyshev basis.
Complex poly_eval(const ComplexPolynomial &p, double x);

struct QspValidityReport {
    bool degree_ok = false;    ///< deg p <= l, deg q <= l - 1
    bool parity_ok = false;    ///< p has parity l mod 2, q has parity (l-1) mod 2
    bool identity_ok = false;  ///< |p|^2 + (1-x^2)|q|^2 = 1 on the grid to 1e-10
    double max_identity_residual = 0.0;
    bool passed() const noexcept { return degree_ok && parity_ok && identity_ok; }
};

/// Checks the three conditions under which a phase sequence of length l+1
/// realizes [[p, i q sqrt(1-x^2)], ...]. Coefficients of magnitude at most
/// coeff_tol count as zero.
QspValidityReport qsp_validity_check(const ComplexPolynomial &p, const ComplexPolynomial &q,
                                     std::size_t degree_budget, std::span<const double> grid,
                                     double coeff_tol = 1e-12);

/// T~_k and U_k in the Chebyshev basis (U_k is the zero polynomial for k < 0).
ComplexPolynomial chebyshev_t_poly(std::size_t k);
ComplexPolynomial chebyshev_u_poly(std::int64_t k);

/// Zero-phase QSP circuit: amp_00 at y[slot] = x equals T~_k(x).
/// Width 1, depth 2k+1, size k+1.
Circuit chebyshev_circuit(std::uint32_t k, std::int32_t slot = 0);

/// Tensor over supp(nu) of chebyshev_circuit(nu_j) bound to y_j; the i-th
/// support coordinate occupies qubit i. nu = 0 yields the empty circuit.
Circuit tensor_chebyshev_circuit(const MultiIndex &nu);

/// One RY(2 arccos y_j) qubit per unit of degree; amp_00 = y^nu.
/// Qubits are assigned coordinate by coordinate in increasing j.
Circuit monomial_circuit(const MultiIndex &nu);

}  // namespace gpcqc

#endif  // GPCQC_QSP_HPP
