#pragma once

// Compatibility of subsets: is a subset contained in some Boolean
// subalgebra of the logic? Also mutual compatibility of two subsets.

#include "qlogic/errors.hpp"
#include "qlogic/logic.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

namespace qlogic {

struct CompatibilityOptions {
    std::size_t node_budget = 1'000'000;
};

struct CompatibilityVerdict {
    bool compatible = false;
    std::optional<std::vector<Element>> witness_boolean_subalgebra;
};

struct MutualCompatibility {
    bool holds = true;
    // Compatible A from the first set and B from the second whose union is
    // not compatible.
    std::optional<std::pair<std::vector<Element>, std::vector<Element>>> counterexample;
};

/// x and y are compatible iff x = p v q, y = q v r with p, q, r mutually
/// orthogonal. When they are, q = x ^ y and p = x ^ q', r = y ^ q'.
inline bool compatible_pair(const FiniteLogic& L, Element x, Element y) {
    auto q = try_inf(L, x, y);
    if (!q) return false;
    auto p = try_inf(L, x, L.ortho(*q));
    auto r = try_inf(L, y, L.ortho(*q));
    return p && r && orthogonal(L, *p, *r);
}

/// True iff `set` contains 0 and 1, is closed under ' and under joins of
/// orthogonal pairs, and is a complemented distributive lattice in the
/// induced order.
inline bool is_boolean_subset(const FiniteLogic& L, const Bitset& set) {
    const auto& d = L.order_data();
    if (!set.test(L.zero()) || !set.test(L.one())) return false;
    std::vector<Element> members;
    for (auto x = set.find_first(); x != Bitset::npos; x = set.find_next(x)) members.push_back(x);
    const std::size_t m = members.size();
    std::vector<std::uint32_t> local(L.size(), UINT32_MAX);
    for (std::size_t i = 0; i < m; ++i) local[members[i]] = static_cast<std::uint32_t>(i);

    for (Element x : members) {
        if (!set.test(L.ortho(x))) return false;
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            if (orthogonal(L, members[i], members[j])) {
                auto s = try_sup(L, members[i], members[j]);
                if (!s || !set.test(*s)) return false;
            }
        }
    }

    std::vector<std::uint32_t> meet(m * m), join(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            auto lo = detail::greatest_of(d, d.down[members[i]] & d.down[members[j]] & set);
            auto hi = detail::least_of(d, d.up[members[i]] & d.up[members[j]] & set);
            if (!lo || !hi) return false;
            meet[i * m + j] = meet[j * m + i] = local[*lo];
            join[i * m + j] = join[j * m + i] = local[*hi];
        }
    }
    const std::uint32_t zero = local[L.zero()], one = local[L.one()];
    for (std::size_t i = 0; i < m; ++i) {
        std::uint32_t c = local[L.ortho(members[i])];
        if (meet[i * m + c] != zero || join[i * m + c] != one) return false;
    }
    for (std::size_t x = 0; x < m; ++x) {
        const std::uint32_t* mx = &meet[x * m];
        for (std::size_t y = 0; y < m; ++y) {
            const std::uint32_t xy = mx[y];
            const std::uint32_t* jy = &join[y * m];
            for (std::size_t z = 0; z < m; ++z) {
                if (mx[jy[z]] != join[xy * m + mx[z]]) return false;
            }
        }
    }
    return true;
}

namespace detail {

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const {
        std::size_t h = 1469598103934665603ull;
        for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) {
            h = (h ^ i) * 1099511628211ull;
        }
        return h;
    }
};

/// Smallest set containing `seed`, 0 and 1 that is closed under ', and
/// under meets and joins of compatible pairs. Any Boolean subalgebra
/// containing `seed` contains this closure. Returns nullopt when two members
/// are not compatible, in which case no Boolean subalgebra exists.
inline std::optional<Bitset> compatible_closure(const FiniteLogic& L, const Bitset& seed) {
    Bitset in(L.size());
    std::vector<Element> members, queue;
    auto add = [&](Element x) {
        if (!in.test(x)) {
            in.set(x);
            queue.push_back(x);
        }
    };
    add(L.zero());
    add(L.one());
    for (auto x = seed.find_first(); x != Bitset::npos; x = seed.find_next(x)) add(x);
    std::size_t head = 0;
    while (head < queue.size()) {
        Element x = queue[head++];
        add(L.ortho(x));
        for (std::size_t k = 0; k < members.size(); ++k) {
            Element y = members[k];
            if (!compatible_pair(L, x, y)) return std::nullopt;
            add(*try_inf(L, x, y));
            auto s = try_sup(L, x, y);
            if (!s) return std::nullopt;
            add(*s);
        }
        members.push_back(x);
    }
    return in;
}

class SubalgebraSearch {
public:
    SubalgebraSearch(const FiniteLogic& L, std::size_t budget) : L_(L), budget_(budget) {}

    std::optional<Bitset> find(const Bitset& seed) { return visit(seed); }

    std::size_t nodes() const { return nodes_; }

private:
    std::optional<Bitset> visit(const Bitset& seed) {
        if (++nodes_ > budget_) {
            throw Error(ErrorKind::SearchBudgetExceeded,
                        "Boolean subalgebra search exceeded " + std::to_string(budget_) + " nodes");
        }
        auto closed = compatible_closure(L_, seed);
        if (!closed) return std::nullopt;
        if (!visited_.insert(*closed).second) return std::nullopt;
        if (is_boolean_subset(L_, *closed)) return closed;
        for (Element x = 0; x < L_.size(); ++x) {
            if (closed->test(x)) continue;
            bool ok = true;
            for (auto y = closed->find_first(); y != Bitset::npos && ok; y = closed->find_next(y)) {
                ok = compatible_pair(L_, x, y);
            }
            if (!ok) continue;
            Bitset next = *closed;
            next.set(x);
            if (auto found = visit(next)) return found;
        }
        return std::nullopt;
    }

    const FiniteLogic& L_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    std::unordered_set<Bitset, BitsetHash> visited_;
};

inline Bitset to_bitset(const FiniteLogic& L, const std::vector<Element>& members) {
    Bitset b(L.size());
    for (Element e : members) {
        if (e >= L.size()) throw Error(ErrorKind::InvalidInput, "element index out of range", {e});
        b.set(e);
    }
    return b;
}

inline std::vector<Element> to_vector(const Bitset& b) {
    std::vector<Element> out;
    for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) out.push_back(i);
    return out;
}

}  // namespace detail

inline CompatibilityVerdict is_compatible_subset(const FiniteLogic& L,
                                                 const std::vector<Element>& members,
                                                 const CompatibilityOptions& opt = {}) {
    detail::SubalgebraSearch search(L, opt.node_budget);
    auto found = search.find(detail::to_bitset(L, members));
    if (!found) return {false, std::nullopt};
    return {true, detail::to_vector(*found)};
}

/// Maximal compatible subsets of `set` (0 and 1 dropped, since they are
/// compatible with everything). Subsets of a compatible set are compatible,
/// so these determine all compatible subsets.
inline std::vector<std::vector<Element>> maximal_compatible_subsets(
    const FiniteLogic& L, const std::vector<Element>& set, const CompatibilityOptions& opt = {}) {
    std::vector<Element> s;
    for (Element e : set) {
        if (e >= L.size()) throw Error(ErrorKind::InvalidInput, "element index out of range", {e});
        if (e != L.zero() && e != L.one()) s.push_back(e);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() > 24) {
        throw Error(ErrorKind::SearchBudgetExceeded,
                    "subset enumeration over " + std::to_string(s.size()) + " elements");
    }
    const std::uint32_t full = (std::uint32_t{1} << s.size()) - 1;
    std::vector<std::uint32_t> masks(full + 1);
    for (std::uint32_t m = 0; m <= full; ++m) masks[m] = m;
    std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        return __builtin_popcount(a) > __builtin_popcount(b);
    });
    std::vector<std::uint32_t> found;
    std::size_t nodes = 0;
    for (std::uint32_t m : masks) {
        bool covered = std::any_of(found.begin(), found.end(),
                                   [m](std::uint32_t f) { return (m & ~f) == 0; });
        if (covered) continue;
        std::vector<Element> members;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (m >> i & 1u) members.push_back(s[i]);
        }
        CompatibilityOptions sub = opt;
        sub.node_budget = opt.node_budget > nodes ? opt.node_budget - nodes : 0;
        detail::SubalgebraSearch search(L, sub.node_budget);
        bool ok = search.find(detail::to_bitset(L, members)).has_value();
        nodes += search.nodes();
        if (ok) found.push_back(m);
    }
    std::vector<std::vector<Element>> out;
    for (std::uint32_t m : found) {
        std::vector<Element> members;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (m >> i & 1u) members.push_back(s[i]);
        }
        out.push_back(std::move(members));
    }
    return out;
}

/// True iff the union of every compatible subset of s1 with every
/// compatible subset of s2 is compatible.
inline MutualCompatibility mutually_compatible(const FiniteLogic& L, const std::vector<Element>& s1,
                                               const std::vector<Element>& s2,
                                               const CompatibilityOptions& opt = {}) {
    auto max1 = maximal_compatible_subsets(L, s1, opt);
    auto max2 = maximal_compatible_subsets(L, s2, opt);
    for (const auto& a : max1) {
        for (const auto& b : max2) {
            std::vector<Element> u = a;
            u.insert(u.end(), b.begin(), b.end());
            if (!is_compatible_subset(L, u, opt).compatible) {
                return {false, std::make_pair(a, b)};
            }
        }
    }
    return {true, std::nullopt};
}

}  // namespace qlogic
