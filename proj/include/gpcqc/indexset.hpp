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

#ifndef GPCQC_INDEXSET_HPP
#define GPCQC_INDEXSET_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gpcqc {

/// 1-based coordinate position of a parameter y_j.
using Coord = std::uint32_t;

/// Finitely supported exponent vector. Only non-zero exponents are stored,
/// sorted by coordinate.
class MultiIndex {
  public:
    struct Entry {
        Coord coord;
        std::uint32_t exponent;
        bool operator==(const Entry &) const = default;
    };

    MultiIndex() = default;

    /// Builds from (coord, exponent) pairs in any order. Zero exponents are
    /// dropped; coordinate 0 or a repeated coordinate is a DomainError.
    static MultiIndex from_entries(std::vector<Entry> entries);
    /// dense[i] is the exponent of coordinate i+1.
    static MultiIndex from_dense(std::span<const std::uint32_t> dense);
    static MultiIndex unit(Coord j);

    std::uint32_t operator[](Coord j) const;
    std::span<const Entry> entries() const noexcept { return entries_; }

    bool is_zero() const noexcept { return entries_.empty(); }
    /// |nu|_0
    std::size_t nnz() const noexcept { return entries_.size(); }
    /// |nu|_1
    std::uint64_t l1() const noexcept;
    /// |nu|_inf
    std::uint32_t linf() const noexcept;
    /// Largest coordinate in the support, 0 for the zero index.
    Coord max_coord() const noexcept { return entries_.empty() ? 0 : entries_.back().coord; }

    MultiIndex plus_unit(Coord j) const;
    /// nu - e_j, or nullopt when nu_j == 0.
    std::optional<MultiIndex> minus_unit(Coord j) const;

    /// Componentwise nu <= other.
    bool leq(const MultiIndex &other) const;

    std::vector<std::uint32_t> dense(std::size_t length) const;

    /// "0" for the zero index, otherwise "j:v;j:v".
    std::string to_string() const;

    bool operator==(const MultiIndex &) const = default;

  private:
    std::vector<Entry> entries_;
};

/// Canonical total order: graded by |nu|_1, then by the dense vector
/// (nu_1, nu_2, ...) in decreasing lexicographic order, so e_1 precedes e_2.
bool canonical_less(const MultiIndex &a, const MultiIndex &b);

struct CanonicalLess {
    bool operator()(const MultiIndex &a, const MultiIndex &b) const { return canonical_less(a, b); }
};

struct StructureFlags {
    bool is_dc = false;
    bool is_anchored = false;
    bool operator==(const StructureFlags &) const = default;
};

/// Finite set of multi-indices held in canonical order. Immutable; the
/// downward-closed and anchored flags are computed once at construction.
class IndexSet {
  public:
    IndexSet();
    /// Sorts canonically. Duplicate members are a DomainError.
    explicit IndexSet(std::vector<MultiIndex> members);

    std::span<const MultiIndex> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const MultiIndex &operator[](std::size_t i) const { return members_[i]; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool contains(const MultiIndex &nu) const;
    /// Position of nu in canonical order, or nullopt.
    std::optional<std::size_t> position(const MultiIndex &nu) const;

    const StructureFlags &flags() const noexcept { return flags_; }
    bool is_dc() const noexcept { return flags_.is_dc; }
    bool is_anchored() const noexcept { return flags_.is_anchored; }

    /// Largest coordinate appearing in any member (the active dimension).
    Coord max_coord() const noexcept;

    bool operator==(const IndexSet &other) const { return members_ == other.members_; }

  private:
    std::vector<MultiIndex> members_;
    StructureFlags flags_;
};

/// Recomputes the structural flags of a set from their definitions.
StructureFlags validate_structure(const IndexSet &set);

inline constexpr std::size_t kDefaultCardinalityCap = 1'000'000;

/// {0,...,k}^d.
IndexSet tensor_product_set(std::size_t d, std::uint32_t k,
                            std::size_t cap = kDefaultCardinalityCap);

/// Holomorphy data (b, eps, p, tau) of a parametric map. The sequence b is
/// evaluated up to the horizon D = b.size().
struct HolomorphyParams {
    std::vector<double> b;
    double eps = 1.0;
    double p = 1.0;
    double tau = 0.0;

    /// b_j = c_b * j^(-s) for j = 1..horizon.
    static HolomorphyParams from_rule(double c_b, double s, std::size_t horizon, double eps,
                                      double p, double tau = 0.0);

    std::size_t horizon() const noexcept { return b.size(); }
    /// beta_j = min(1/2, b_j / (b_j + 2 eps)) for 1-based j.
    double beta(Coord j) const;
    /// Throws DomainError unless b_j > 0 on the horizon, eps > 0, 0 < p <= 1, tau >= 0.
    void validate() const;
};

inline constexpr std::size_t kDefaultHorizon = 64;

/// Product-form majorant a_nu = prod beta_j^nu_j * prod (1 + nu_j)^(-tau).
double apriori_weight(const MultiIndex &nu, const HolomorphyParams &params);

/// The n indices of largest a-priori weight (ties in canonical order), found
/// by best-first search over the downward-closed frontier. The result is
/// downward closed for every n and nested in n.
IndexSet select_apriori(std::size_t n, const HolomorphyParams &params);

/// The n indices of largest |coefficient| (ties in canonical order).
IndexSet select_greedy(std::span<const std::pair<MultiIndex, double>> coeffs, std::size_t n);

struct OrderStats {
    std::size_t max_nu0 = 0;
    std::uint64_t max_nu1 = 0;
    std::uint32_t max_nuinf = 0;
    bool operator==(const OrderStats &) const = default;
};

OrderStats order_stats(const IndexSet &set);

}  // namespace gpcqc

#endif  // GPCQC_INDEXSET_HPP
