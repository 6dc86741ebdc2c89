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

#ifndef GPCQC_GPC_HPP
#define GPCQC_GPC_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpcqc/indexset.hpp"

namespace gpcqc {

struct RationalAffineModel;

/// Normalization of the univariate Chebyshev polynomials.
///   Classical: T~_k(x) = cos(k arccos x), sup norm 1.
///   Onb:       orthonormal under the probability Chebyshev measure,
///              T_0 = 1, T_k = sqrt(2) T~_k for k >= 1.
enum class Basis { Classical, Onb };

enum class ExpansionKind { Chebyshev, Taylor };

const char *to_string(Basis basis);
const char *to_string(ExpansionKind kind);

/// 2^(|nu|_0 / 2): the ratio T_nu / T~_nu.
double onb_factor(const MultiIndex &nu);

/// Real parametric map on [-1,1]^D. Callers may pass fewer than D
/// coordinates; the missing trailing coordinates are taken to be 0.
using ScalarField = std::function<double(std::span<const double>)>;

/// Sparse gPC coefficient map, stored in canonical index order.
class GpcExpansion {
  public:
    using Term = std::pair<MultiIndex, double>;

    GpcExpansion() = default;
    /// Sorts terms canonically; duplicate indices or non-finite values are a DomainError.
    GpcExpansion(ExpansionKind kind, Basis basis, std::vector<Term> terms,
                 std::string model_id = {});

    ExpansionKind kind() const noexcept { return kind_; }
    /// Meaningless for Taylor expansions (monomial basis).
    Basis basis() const noexcept { return basis_; }
    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    const std::string &model_id() const noexcept { return model_id_; }

    /// Coefficient of nu, 0 when nu is not stored.
    double coeff(const MultiIndex &nu) const;
    IndexSet support() const;

    double l1_norm() const;
    double l2_norm() const;

    /// Set when quadrature used fewer nodes than max|nu|_inf + 1.
    bool quadrature_warning() const noexcept { return quadrature_warning_; }
    void set_quadrature_warning(bool flag) noexcept { quadrature_warning_ = flag; }

    /// Restriction to the members of set (which must be stored).
    GpcExpansion restrict_to(const IndexSet &set) const;

  private:
    ExpansionKind kind_ = ExpansionKind::Chebyshev;
    Basis basis_ = Basis::Onb;
    std::vector<Term> terms_;
    std::string model_id_;
    bool quadrature_warning_ = false;
};

/// T~_k(x), or sqrt(2) T~_k(x) in the Onb normalization. |x| up to 1 + 1e-12
/// is clamped; anything further out is a DomainError.
double cheb_eval(std::uint32_t k, double x, Basis basis);

/// prod over supp(nu) of cheb_eval(nu_j, y_j).
double tensor_cheb_eval(const MultiIndex &nu, std::span<const double> y, Basis basis);

/// Onb Chebyshev coefficients of f on set by tensorized Gauss-Chebyshev
/// quadrature with nodes_per_dim nodes in each active coordinate
/// 1..set.max_coord(). Coordinates beyond the active ones are frozen at 0.
GpcExpansion cheb_coefficients(const ScalarField &f, const IndexSet &set, std::size_t nodes_per_dim,
                               std::string model_id = {});

/// Closed-form Taylor coefficients of theta / (c + sum_j b_j y_j).
GpcExpansion taylor_coefficients(const RationalAffineModel &model, const IndexSet &set);

/// Value of the truncated expansion at y. Terms are summed in canonical order.
double eval_truncated(const GpcExpansion &expansion, std::span<const double> y);

/// Rescales every coefficient by 2^(+-|nu|_0/2). Taylor input is a DomainError.
GpcExpansion convert_basis(const GpcExpansion &expansion, Basis target);

/// Draws y with y_j = cos(pi u_j), u_j i.i.d. uniform on [0,1): the product
/// Chebyshev probability measure.
class MeasureSampler {
  public:
    MeasureSampler(std::size_t dimension, std::uint64_t seed);
    std::size_t dimension() const noexcept { return dimension_; }
    std::uint64_t seed() const noexcept { return seed_; }
    void draw(std::span<double> out);
    std::vector<double> draw();

  private:
    std::size_t dimension_;
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Evaluation points for error estimation: mc_count sampler draws followed by
/// the corner points (all of {-1,1}^D when D <= 10, otherwise the corners of
/// the leading 10 coordinates with the remaining ones at 0).
struct SampleSet {
    std::size_t dimension = 0;
    std::size_t mc_count = 0;
    std::vector<double> coords;  // row-major, size() * dimension

    std::size_t size() const noexcept { return dimension ? coords.size() / dimension : mc_count; }
    std::span<const double> point(std::size_t i) const {
        return std::span<const double>(coords).subspan(i * dimension, dimension);
    }
};

inline constexpr std::size_t kMaxCornerDims = 10;

SampleSet make_sample_set(MeasureSampler &sampler, std::size_t samples, bool with_corners = true);

struct ErrorNorms {
    double l2_rho = 0.0;      ///< Monte Carlo estimate of ||f - g||_{L2(rho)}
    double l2_stderr = 0.0;   ///< standard error of l2_rho (delta method)
    double linf = 0.0;        ///< max deviation over samples and corners (a lower bound)
    std::size_t mc_samples = 0;
    std::size_t corner_samples = 0;
};

/// Norms of f - g from values at the points of a SampleSet.
ErrorNorms error_norms(std::span<const double> f_values, std::span<const double> g_values,
                       std::size_t mc_count);

/// Norms of f - expansion using samples draws from sampler (at least 1000).
ErrorNorms error_norms(const ScalarField &f, const GpcExpansion &expansion, std::size_t samples,
                       MeasureSampler &sampler);

/// Monte Carlo mean of v^2 over the first mc_count values with its standard error.
std::pair<double, double> mean_square(std::span<const double> values, std::size_t mc_count);

}  // namespace gpcqc

#endif  // GPCQC_GPC_HPP
