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

#include "gpcqc/qsp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gpcqc/error.hpp"

namespace gpcqc {

namespace {

Matrix2c z_phase(double phi) {
    Matrix2c m;
    m << std::polar(1.0, phi), 0.0, 0.0, std::polar(1.0, -phi);
    return m;
}

// Highest power with a non-negligible coefficient, -1 for the zero polynomial.
long degree(const ComplexPolynomial &p, double tol) {
    for (long k = static_cast<long>(p.coeffs.size()) - 1; k >= 0; --k)
        if (std::abs(p.coeffs[static_cast<std::size_t>(k)]) > tol) return k;
    return -1;
}

bool has_parity(const ComplexPolynomial &p, std::size_t parity, double tol) {
    for (std::size_t k = 0; k < p.coeffs.size(); ++k)
        if (k % 2 != parity && std::abs(p.coeffs[k]) > tol) return false;
    return true;
}

}  // namespace

Matrix2c signal_operator(double x) {
    if (!(std::abs(x) <= 1.0 + 1e-12)) throw DomainError("signal_operator: |x| > 1");
    x = std::clamp(x, -1.0, 1.0);
    const Complex off(0.0, std::sqrt(std::max(0.0, 1.0 - x * x)));
    Matrix2c w;
    w << x, off, off, x;
    return w;
}

Matrix2c qsp_unitary(std::span<const double> phases, double x) {
    if (phases.empty()) throw DomainError("qsp_unitary: at least one phase required");
    const Matrix2c w = signal_operator(x);
    Matrix2c v = z_phase(phases[0]);
    for (std::size_t j = 1; j < phases.size(); ++j) v = v * w * z_phase(phases[j]);
    return v;
}

Circuit qsp_circuit(std::span<const double> phases, std::int32_t slot) {
    if (phases.empty()) throw DomainError("qsp_circuit: at least one phase required");
    Circuit c(1);
    // The rightmost factor acts first.
    for (std::size_t j = phases.size(); j-- > 0;) {
        c.rz(0, Param::literal(-2.0 * phases[j]));
        if (j > 0) c.rx(0, Param::arccos_of(slot, -2.0), false);
    }
    return c;
}

Complex poly_eval(const ComplexPolynomial &p, double x) {
    const auto &c = p.coeffs;
    if (p.basis == ComplexPolynomial::Basis::Monomial) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        return acc;
    }
    if (c.empty()) return {0.0, 0.0};
    Complex b1(0.0, 0.0), b2(0.0, 0.0);
    for (std::size_t k = c.size(); k-- > 1;) {
        const Complex b0 = c[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + x * b1 - b2;
}

QspValidityReport qsp_validity_check(const ComplexPolynomial &p, const ComplexPolynomial &q,
                                     std::size_t degree_budget, std::span<const double> grid,
                                     double coeff_tol) {
    QspValidityReport r;
    const long l = static_cast<long>(degree_budget);
    r.degree_ok = degree(p, coeff_tol) <= l && degree(q, coeff_tol) <= l - 1;
    r.parity_ok = has_parity(p, degree_budget % 2, coeff_tol) &&
                  (degree_budget == 0 ? degree(q, coeff_tol) < 0
                                      : has_parity(q, (degree_budget - 1) % 2, coeff_tol));
    double worst = 0.0;
    for (double x : grid) {
        const double lhs = std::norm(poly_eval(p, x)) + (1.0 - x * x) * std::norm(poly_eval(q, x));
        worst = std::max(worst, std::abs(lhs - 1.0));
    }
    r.max_identity_residual = worst;
    r.identity_ok = worst <= 1e-10;
    return r;
}

ComplexPolynomial chebyshev_t_poly(std::size_t k) {
    std::vector<Complex> c(k + 1, Complex(0.0, 0.0));
    c[k] = 1.0;
    return ComplexPolynomial::chebyshev(std::move(c));
}

ComplexPolynomial chebyshev_u_poly(std::int64_t k) {
    if (k < 0) return ComplexPolynomial::chebyshev({});
    // U_k = 2 sum_{j = k, k-2, ...} T~_j, with the T~_0 term halved.
    const auto n = static_cast<std::size_t>(k);
    std::vector<Complex> c(n + 1, Complex(0.0, 0.0));
    for (std::size_t j = n % 2; j <= n; j += 2) c[j] = j == 0 ? 1.0 : 2.0;
    return ComplexPolynomial::chebyshev(std::move(c));
}

Circuit chebyshev_circuit(std::uint32_t k, std::int32_t slot) {
    const std::vector<double> zeros(static_cast<std::size_t>(k) + 1, 0.0);
    return qsp_circuit(zeros, slot);
}

Circuit tensor_chebyshev_circuit(const MultiIndex &nu) {
    std::vector<Circuit> factors;
    factors.reserve(nu.nnz());
    for (const auto &e : nu.entries())
        factors.push_back(chebyshev_circuit(e.exponent, static_cast<std::int32_t>(e.coord - 1)));
    return tensor(factors);
}

Circuit monomial_circuit(const MultiIndex &nu) {
    Circuit c(static_cast<std::size_t>(nu.l1()));
    std::uint32_t q = 0;
    for (const auto &e : nu.entries())
        for (std::uint32_t i = 0; i < e.exponent; ++i)
            c.ry(q++, Param::arccos_of(static_cast<std::int32_t>(e.coord - 1), 2.0));
    return c;
}

}  // namespace gpcqc
