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

#include "gpcqc/indexset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gpcqc/error.hpp"

namespace gpcqc {

MultiIndex MultiIndex::from_entries(std::vector<Entry> entries) {
    std::erase_if(entries, [](const Entry &e) { return e.exponent == 0; });
    std::sort(entries.begin(), entries.end(),
              [](const Entry &a, const Entry &b) { return a.coord < b.coord; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].coord == 0) {
            throw DomainError("multi-index coordinates are 1-based");
        }
        if (i > 0 && entries[i].coord == entries[i - 1].coord) {
            throw DomainError("multi-index coordinate " + std::to_string(entries[i].coord) +
                              " given twice");
        }
    }
    MultiIndex nu;
    nu.entries_ = std::move(entries);
    return nu;
}

MultiIndex MultiIndex::from_dense(std::span<const std::uint32_t> dense) {
    MultiIndex nu;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (dense[i] != 0) {
            nu.entries_.push_back({static_cast<Coord>(i + 1), dense[i]});
        }
    }
    return nu;
}

MultiIndex MultiIndex::unit(Coord j) { return from_entries({{j, 1}}); }

std::uint32_t MultiIndex::operator[](Coord j) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), j,
                               [](const Entry &e, Coord c) { return e.coord < c; });
    return (it != entries_.end() && it->coord == j) ? it->exponent : 0;
}

std::uint64_t MultiIndex::l1() const noexcept {
    std::uint64_t s = 0;
    for (const auto &e : entries_) s += e.exponent;
    return s;
}

std::uint32_t MultiIndex::linf() const noexcept {
    std::uint32_t m = 0;
    for (const auto &e : entries_) m = std::max(m, e.exponent);
    return m;
}

MultiIndex MultiIndex::plus_unit(Coord j) const {
    if (j == 0) throw DomainError("multi-index coordinates are 1-based");
    MultiIndex out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), j,
                               [](const Entry &e, Coord c) { return e.coord < c; });
    if (it != out.entries_.end() && it->coord == j) {
        ++it->exponent;
    } else {
        out.entries_.insert(it, Entry{j, 1});
    }
    return out;
}

std::optional<MultiIndex> MultiIndex::minus_unit(Coord j) const {
    MultiIndex out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), j,
                               [](const Entry &e, Coord c) { return e.coord < c; });
    if (it == out.entries_.end() || it->coord != j) return std::nullopt;
    if (--it->exponent == 0) out.entries_.erase(it);
    return out;
}

bool MultiIndex::leq(const MultiIndex &other) const {
    for (const auto &e : entries_) {
        if (e.exponent > other[e.coord]) return false;
    }
    return true;
}

std::vector<std::uint32_t> MultiIndex::dense(std::size_t length) const {
    if (max_coord() > length) {
        throw DomainError("multi-index support exceeds dense length " + std::to_string(length));
    }
    std::vector<std::uint32_t> out(length, 0);
    for (const auto &e : entries_) out[e.coord - 1] = e.exponent;
    return out;
}

std::string MultiIndex::to_string() const {
    if (entries_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(entries_[i].coord) + ':' + std::to_string(entries_[i].exponent);
    }
    return s;
}

bool canonical_less(const MultiIndex &a, const MultiIndex &b) {
    const auto la = a.l1();
    const auto lb = b.l1();
    if (la != lb) return la < lb;
    // Walk the dense vectors in coordinate order; the first difference decides,
    // larger exponent first.
    auto ea = a.entries();
    auto eb = b.entries();
    std::size_t i = 0, k = 0;
    while (i < ea.size() || k < eb.size()) {
        const Coord ca = i < ea.size() ? ea[i].coord : UINT32_MAX;
        const Coord cb = k < eb.size() ? eb[k].coord : UINT32_MAX;
        const Coord c = std::min(ca, cb);
        const std::uint32_t va = (ca == c) ? ea[i].exponent : 0;
        const std::uint32_t vb = (cb == c) ? eb[k].exponent : 0;
        if (va != vb) return va > vb;
        if (ca == c) ++i;
        if (cb == c) ++k;
    }
    return false;
}

namespace {

StructureFlags compute_flags(const IndexSet &set) {
    StructureFlags flags{true, true};
    for (const auto &nu : set) {
        for (const auto &e : nu.entries()) {
            if (!set.contains(*nu.minus_unit(e.coord))) {
                flags.is_dc = false;
                break;
            }
        }
        if (!flags.is_dc) break;
    }
    std::vector<Coord> units;
    for (const auto &nu : set) {
        if (nu.nnz() == 1 && nu.l1() == 1) units.push_back(nu.entries()[0].coord);
    }
    std::sort(units.begin(), units.end());
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (units[i] != i + 1) {
            flags.is_anchored = false;
            break;
        }
    }
    return flags;
}

}  // namespace

IndexSet::IndexSet() : flags_{true, true} {}

IndexSet::IndexSet(std::vector<MultiIndex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end(), CanonicalLess{});
    for (std::size_t i = 1; i < members_.size(); ++i) {
        if (members_[i] == members_[i - 1]) {
            throw DomainError("duplicate multi-index " + members_[i].to_string() + " in index set");
        }
    }
    flags_ = compute_flags(*this);
}

bool IndexSet::contains(const MultiIndex &nu) const { return position(nu).has_value(); }

std::optional<std::size_t> IndexSet::position(const MultiIndex &nu) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), nu, CanonicalLess{});
    if (it == members_.end() || !(*it == nu)) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
}

Coord IndexSet::max_coord() const noexcept {
    Coord m = 0;
    for (const auto &nu : members_) m = std::max(m, nu.max_coord());
    return m;
}

StructureFlags validate_structure(const IndexSet &set) { return compute_flags(set); }

IndexSet tensor_product_set(std::size_t d, std::uint32_t k, std::size_t cap) {
    if (d == 0) throw DomainError("tensor_product_set: dimension must be >= 1");
    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (count > cap / (static_cast<std::size_t>(k) + 1)) {
            throw SizeError("tensor_product_set: (k+1)^d exceeds cardinality cap " +
                            std::to_string(cap));
        }
        count *= static_cast<std::size_t>(k) + 1;
    }
    std::vector<MultiIndex> members;
    members.reserve(count);
    std::vector<std::uint32_t> digits(d, 0);
    for (std::size_t c = 0; c < count; ++c) {
        members.push_back(MultiIndex::from_dense(digits));
        for (std::size_t i = 0; i < d; ++i) {
            if (++digits[i] <= k) break;
            digits[i] = 0;
        }
    }
    return IndexSet(std::move(members));
}

HolomorphyParams HolomorphyParams::from_rule(double c_b, double s, std::size_t horizon, double eps,
                                             double p, double tau) {
    HolomorphyParams params;
    params.b.resize(horizon);
    for (std::size_t j = 1; j <= horizon; ++j) {
        params.b[j - 1] = c_b * std::pow(static_cast<double>(j), -s);
    }
    params.eps = eps;
    params.p = p;
    params.tau = tau;
    return params;
}

double HolomorphyParams::beta(Coord j) const {
    if (j == 0 || j > b.size()) {
        throw DomainError("coordinate " + std::to_string(j) + " outside the evaluation horizon D = " +
                          std::to_string(b.size()));
    }
    const double bj = b[j - 1];
    return std::min(0.5, bj / (bj + 2.0 * eps));
}

void HolomorphyParams::validate() const {
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!(b[j] > 0.0)) {
            throw DomainError("holomorphy params: b_" + std::to_string(j + 1) + " must be > 0");
        }
    }
    if (!(eps > 0.0)) throw DomainError("holomorphy params: eps must be > 0");
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("holomorphy params: p must lie in (0, 1]");
    if (!(tau >= 0.0)) throw DomainError("holomorphy params: tau must be >= 0");
}

double apriori_weight(const MultiIndex &nu, const HolomorphyParams &params) {
    double w = 1.0;
    for (const auto &e : nu.entries()) {
        w *= std::pow(params.beta(e.coord), static_cast<double>(e.exponent));
        if (params.tau != 0.0) w *= std::pow(1.0 + e.exponent, -params.tau);
    }
    return w;
}

namespace {

struct Candidate {
    double weight;
    MultiIndex nu;
};

// Larger weight first, then canonical order.
struct CandidateOrder {
    bool operator()(const Candidate &a, const Candidate &b) const {
        if (a.weight != b.weight) return a.weight > b.weight;
        return canonical_less(a.nu, b.nu);
    }
};

}  // namespace

IndexSet select_apriori(std::size_t n, const HolomorphyParams &params) {
    if (n == 0) throw DomainError("select_apriori: n must be >= 1");
    if (n > kDefaultCardinalityCap) {
        throw SizeError("select_apriori: n exceeds cardinality cap");
    }
    params.validate();
    const Coord horizon = static_cast<Coord>(params.horizon());

    std::set<MultiIndex, CanonicalLess> selected;
    std::set<MultiIndex, CanonicalLess> seen;
    std::set<Candidate, CandidateOrder> frontier;
    std::vector<MultiIndex> result;
    result.reserve(n);

    frontier.insert({1.0, MultiIndex{}});
    seen.insert(MultiIndex{});
    while (result.size() < n) {
        if (frontier.empty()) {
            throw ExhaustionError("select_apriori: frontier exhausted (weights underflow) after " +
                                      std::to_string(result.size()) + " indices",
                                  result.size());
        }
        Candidate best = *frontier.begin();
        frontier.erase(frontier.begin());
        selected.insert(best.nu);
        result.push_back(best.nu);

        for (Coord j = 1; j <= horizon; ++j) {
            MultiIndex next = best.nu.plus_unit(j);
            if (seen.contains(next)) continue;
            bool ready = true;
            for (const auto &e : next.entries()) {
                if (!selected.contains(*next.minus_unit(e.coord))) {
                    ready = false;
                    break;
                }
            }
            if (!ready) continue;
            seen.insert(next);
            const double w = apriori_weight(next, params);
            if (w > 0.0) frontier.insert({w, std::move(next)});
        }
    }
    return IndexSet(std::move(result));
}

IndexSet select_greedy(std::span<const std::pair<MultiIndex, double>> coeffs, std::size_t n) {
    if (n > coeffs.size()) {
        throw DomainError("select_greedy: n = " + std::to_string(n) + " exceeds support size " +
                          std::to_string(coeffs.size()));
    }
    std::vector<std::size_t> order(coeffs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = std::abs(coeffs[a].second);
        const double mb = std::abs(coeffs[b].second);
        if (ma != mb) return ma > mb;
        return canonical_less(coeffs[a].first, coeffs[b].first);
    });
    std::vector<MultiIndex> members;
    members.reserve(n);
    for (std::size_t i = 0; i < n; ++i) members.push_back(coeffs[order[i]].first);
    return IndexSet(std::move(members));
}

OrderStats order_stats(const IndexSet &set) {
    if (set.empty()) throw DomainError("order_stats: empty index set");
    OrderStats s;
    for (const auto &nu : set) {
        s.max_nu0 = std::max(s.max_nu0, nu.nnz());
        s.max_nu1 = std::max(s.max_nu1, nu.l1());
        s.max_nuinf = std::max(s.max_nuinf, nu.linf());
    }
    return s;
}

}  // namespace gpcqc
