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

#ifndef GPCQC_MODELS_HPP
#define GPCQC_MODELS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gpcqc/gpc.hpp"
#include "gpcqc/indexset.hpp"

namespace gpcqc {

/// f(y) = theta / (c + sum_{j <= D} b_j y_j) with c > sum |b_j|.
struct RationalAffineModel {
    double theta = 1.0;
    double c = 2.0;
    std::vector<double> b;  ///< b_1..b_D
    double rule_c_b = 0.0;  ///< b_j = rule_c_b * j^(-rule_s) before truncation
    double rule_s = 1.0;

    /// b_j = c_b j^(-s) for j <= min(D, active_dims); zero beyond active_dims
    /// when active_dims > 0.
    static RationalAffineModel from_rule(double theta, double c, double c_b, double s, std::size_t D,
                                         std::size_t active_dims = 0);

    std::size_t dimension() const noexcept { return b.size(); }
    /// Largest j with b_j != 0 (0 for a constant model).
    std::size_t active_dims() const noexcept;
    /// c - sum |b_j|.
    double margin() const noexcept;
    /// Throws ConfigError when the margin is not positive or theta, c are not finite.
    void validate() const;
    std::string id() const;
};

double eval_rational(const RationalAffineModel &model, std::span<const double> y);

/// Exact Onb Chebyshev coefficients of the rational model over all D
/// coordinates, from the Laplace representation
///   E[f T~_nu] = theta * int_0^inf e^{-tc} prod_j E[e^{-t b_j y_j} T~_{nu_j}(y_j)] dt
/// with E[e^{-s y} T~_k(y)] = I_k(-s) under the Chebyshev measure. The
/// t-integral uses a fixed exp-sinh rule.
GpcExpansion rational_cheb_coefficients(const RationalAffineModel &model, const IndexSet &set);

/// ||f||^2_{L2(rho)} of the rational model by the same Laplace representation.
double rational_mean_square(const RationalAffineModel &model);

/// 1-D parametric diffusion -(a(x,y) u')' = 1 on (0,1), u(0) = u(1) = 0 with
/// a(x,y) = a0 + sum_{j <= D} y_j c_b j^(-s) sin(j pi x); quantity of interest
/// G(u) = int_0^1 u dx.
struct Diffusion1DModel {
    std::size_t cells = 128;  ///< h = 1 / cells
    double a0 = 1.0;
    double c_b = 0.0;
    double s = 2.0;
    std::size_t D = 4;
    double kappa = 0.5;

    double h() const noexcept { return 1.0 / static_cast<double>(cells); }
    double psi_amplitude(std::size_t j) const;
    double coefficient(double x, std::span<const double> y) const;
    /// Checks a(x,y) >= (1 - kappa) a0 > 0 for all y on the mesh midpoints.
    void validate() const;
    std::size_t dimension() const noexcept { return D; }
    std::string id() const;
};

/// G(u(., y)) from a second-order conservative finite-difference solve with
/// midpoint coefficients and a tridiagonal elimination; trapezoid rule for G.
double solve_diffusion(const Diffusion1DModel &model, std::span<const double> y);

/// Nodal solution u_0..u_N of the same discretization.
std::vector<double> solve_diffusion_field(const Diffusion1DModel &model, std::span<const double> y);

struct ModelHolomorphy {
    HolomorphyParams params;
    bool finite_dimensional = false;
    std::size_t finite_dim = 0;  ///< number of active coordinates when finite_dimensional
    double margin = 0.0;
    double tail_bound = 0.0;     ///< sum_{j > D} b_j, the dimension-truncation bias proxy
};

ModelHolomorphy holomorphy_params(const RationalAffineModel &model);
ModelHolomorphy holomorphy_params(const Diffusion1DModel &model);

using Model = std::variant<RationalAffineModel, Diffusion1DModel>;

ScalarField as_field(const Model &model);
std::size_t model_dimension(const Model &model);
std::string model_id(const Model &model);
ModelHolomorphy model_holomorphy(const Model &model);

}  // namespace gpcqc

#endif  // GPCQC_MODELS_HPP
