#pragma once

// Finite orthomodular posets: validation against the axioms and the basic
// order / orthogonality / atom queries. No lattice structure is assumed;
// suprema and infima are looked up per pair and may be absent.

#include "qlogic/errors.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qlogic {

using Element = std::size_t;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// Unvalidated logic as authored: labels, generating order pairs (i <= j),
/// the orthocomplement as an index array, and the positions of 0 and 1.
struct LogicDescription {
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> le_pairs;
    std::vector<std::size_t> ortho;
    std::size_t zero_index = 0;
    std::size_t one_index = 0;
};

struct LogicConfig {
    std::size_t max_elements = 1024;
};

/// First axiom failure found by check_axioms; `first`/`second` are canonical
/// element indices whose meaning depends on the axiom (for 'E': f, e).
struct AxiomWitness {
    char axiom;
    Element first;
    Element second;
};

class FiniteLogic;

namespace detail {

/// Order data shared by the validator and FiniteLogic: canonical indices,
/// 0 at index 0 and 1 at index n-1.
struct OrderData {
    std::vector<std::string> labels;
    std::vector<Bitset> up;    // up[i]   = { j : i <= j }
    std::vector<Bitset> down;  // down[j] = { i : i <= j }
    std::vector<std::size_t> down_count;
    std::vector<Element> ortho;
    std::vector<std::size_t> raw_to_index;

    std::size_t size() const { return labels.size(); }
    bool leq(Element a, Element b) const { return up[a].test(b); }
};

inline std::optional<Element> least_of(const OrderData& d, const Bitset& set) {
    std::optional<Element> best;
    bool tie = false;
    for (auto i = set.find_first(); i != Bitset::npos; i = set.find_next(i)) {
        if (!best || d.down_count[i] < d.down_count[*best]) {
            best = i;
            tie = false;
        } else if (d.down_count[i] == d.down_count[*best]) {
            tie = true;
        }
    }
    if (!best || tie || !set.is_subset_of(d.up[*best])) return std::nullopt;
    return best;
}

inline std::optional<Element> greatest_of(const OrderData& d, const Bitset& set) {
    std::optional<Element> best;
    bool tie = false;
    for (auto i = set.find_first(); i != Bitset::npos; i = set.find_next(i)) {
        if (!best || d.down_count[i] > d.down_count[*best]) {
            best = i;
            tie = false;
        } else if (d.down_count[i] == d.down_count[*best]) {
            tie = true;
        }
    }
    if (!best || tie || !set.is_subset_of(d.down[*best])) return std::nullopt;
    return best;
}

inline std::optional<Element> sup(const OrderData& d, Element a, Element b) {
    return least_of(d, d.up[a] & d.up[b]);
}

inline std::optional<Element> inf(const OrderData& d, Element a, Element b) {
    return greatest_of(d, d.down[a] & d.down[b]);
}

inline void check_well_formed(const LogicDescription& raw, const LogicConfig& cfg) {
    const std::size_t n = raw.labels.size();
    if (n < 2) throw Error(ErrorKind::NoBounds, "a logic needs distinct 0 and 1");
    if (n > cfg.max_elements) {
        throw Error(ErrorKind::InvalidInput, "logic has " + std::to_string(n) +
                                                 " elements, limit is " +
                                                 std::to_string(cfg.max_elements));
    }
    std::unordered_map<std::string_view, std::size_t> seen;
    for (std::size_t i = 0; i < n; ++i) {
        if (raw.labels[i].empty()) throw Error(ErrorKind::InvalidInput, "empty label", {i});
        if (!seen.emplace(raw.labels[i], i).second) {
            throw Error(ErrorKind::InvalidInput, "duplicate label '" + raw.labels[i] + "'", {i});
        }
    }
    if (raw.ortho.size() != n) {
        throw Error(ErrorKind::InvalidInput, "ortho must list one index per element");
    }
    for (auto o : raw.ortho) {
        if (o >= n) throw Error(ErrorKind::InvalidInput, "ortho index out of range", {o});
    }
    for (auto [a, b] : raw.le_pairs) {
        if (a >= n || b >= n) throw Error(ErrorKind::InvalidInput, "order pair index out of range");
    }
    if (raw.zero_index >= n || raw.one_index >= n) {
        throw Error(ErrorKind::InvalidInput, "zero/one index out of range");
    }
    if (raw.zero_index == raw.one_index) {
        throw Error(ErrorKind::NoBounds, "0 and 1 must be distinct elements");
    }
}

/// Canonical reindexing, closure, antisymmetry and bounds. Axioms are not
/// checked here.
inline OrderData build_order(const LogicDescription& raw, const LogicConfig& cfg) {
    check_well_formed(raw, cfg);
    const std::size_t n = raw.labels.size();

    OrderData d;
    d.raw_to_index.assign(n, 0);
    std::vector<std::size_t> index_to_raw;
    index_to_raw.reserve(n);
    index_to_raw.push_back(raw.zero_index);
    for (std::size_t i = 0; i < n; ++i) {
        if (i != raw.zero_index && i != raw.one_index) index_to_raw.push_back(i);
    }
    index_to_raw.push_back(raw.one_index);
    for (std::size_t k = 0; k < n; ++k) d.raw_to_index[index_to_raw[k]] = k;

    d.labels.resize(n);
    d.ortho.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        d.labels[k] = raw.labels[index_to_raw[k]];
        d.ortho[k] = d.raw_to_index[raw.ortho[index_to_raw[k]]];
    }

    d.up.assign(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) d.up[i].set(i);
    for (auto [a, b] : raw.le_pairs) d.up[d.raw_to_index[a]].set(d.raw_to_index[b]);
    // Warshall closure on rows: if i <= k then up[i] |= up[k].
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i != k && d.up[i].test(k)) d.up[i] |= d.up[k];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (auto j = d.up[i].find_next(i); j != Bitset::npos; j = d.up[i].find_next(j)) {
            if (d.up[j].test(i)) {
                throw Error(ErrorKind::NotAPartialOrder,
                            "'" + d.labels[i] + "' and '" + d.labels[j] +
                                "' are mutually below each other",
                            {i, j});
            }
        }
    }
    d.down.assign(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (auto j = d.up[i].find_first(); j != Bitset::npos; j = d.up[i].find_next(j)) {
            d.down[j].set(i);
        }
    }
    d.down_count.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.down_count[i] = d.down[i].count();

    if (d.up[0].count() != n) {
        throw Error(ErrorKind::NoBounds, "'" + d.labels[0] + "' is not the minimum", {0});
    }
    if (d.down[n - 1].count() != n) {
        throw Error(ErrorKind::NoBounds, "'" + d.labels[n - 1] + "' is not the maximum", {n - 1});
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (d.ortho[d.ortho[i]] != i) {
            throw Error(ErrorKind::OrthoNotInvolutive,
                        "(" + d.labels[i] + "')' != " + d.labels[i], {i});
        }
    }
    return d;
}

inline std::optional<AxiomWitness> first_axiom_violation(const OrderData& d) {
    const std::size_t n = d.size();
    const Element one = n - 1;
    // (A) e <= f implies f' <= e'
    for (Element e = 0; e < n; ++e) {
        for (auto f = d.up[e].find_first(); f != Bitset::npos; f = d.up[e].find_next(f)) {
            if (!d.leq(d.ortho[f], d.ortho[e])) return AxiomWitness{'A', e, f};
        }
    }
    // (C) e <= f' implies e v f exists
    for (Element e = 0; e < n; ++e) {
        for (Element f = 0; f < n; ++f) {
            if (d.leq(e, d.ortho[f]) && !sup(d, e, f)) return AxiomWitness{'C', e, f};
        }
    }
    // (D) e v e' = 1
    for (Element e = 0; e < n; ++e) {
        auto s = sup(d, e, d.ortho[e]);
        if (!s || *s != one) return AxiomWitness{'D', e, d.ortho[e]};
    }
    // (E) f <= e implies e = f v (e ^ f')
    for (Element e = 0; e < n; ++e) {
        for (auto f = d.down[e].find_first(); f != Bitset::npos; f = d.down[e].find_next(f)) {
            auto m = inf(d, e, d.ortho[f]);
            std::optional<Element> s;
            if (m) s = sup(d, f, *m);
            if (!s || *s != e) return AxiomWitness{'E', f, e};
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// A validated finite orthomodular poset. Immutable; element 0 is the
/// bottom and element size()-1 the top.
class FiniteLogic {
public:
    std::size_t size() const { return d_.size(); }
    Element zero() const { return 0; }
    Element one() const { return d_.size() - 1; }

    bool leq(Element a, Element b) const { return d_.leq(a, b); }
    Element ortho(Element e) const { return d_.ortho[e]; }
    const std::string& label(Element e) const { return d_.labels[e]; }
    const std::vector<std::string>& labels() const { return d_.labels; }

    const Bitset& up(Element e) const { return d_.up[e]; }
    const Bitset& down(Element e) const { return d_.down[e]; }
    std::size_t down_count(Element e) const { return d_.down_count[e]; }

    /// Hasse edges (x covered by y), sorted.
    const std::vector<std::pair<Element, Element>>& covers() const { return covers_; }

    /// Index in the originating description -> canonical index.
    Element from_raw(std::size_t raw_index) const { return d_.raw_to_index.at(raw_index); }

    std::optional<Element> find(std::string_view label) const {
        auto it = by_label_.find(std::string(label));
        if (it == by_label_.end()) return std::nullopt;
        return it->second;
    }

    Element element(std::string_view label) const {
        auto e = find(label);
        if (!e) throw Error(ErrorKind::InvalidInput, "unknown element label '" + std::string(label) + "'");
        return *e;
    }

    const detail::OrderData& order_data() const { return d_; }

    friend bool operator==(const FiniteLogic& a, const FiniteLogic& b) {
        return a.d_.labels == b.d_.labels && a.d_.up == b.d_.up && a.d_.ortho == b.d_.ortho;
    }

private:
    friend FiniteLogic validate_logic(const LogicDescription&, const LogicConfig&);

    explicit FiniteLogic(detail::OrderData d) : d_(std::move(d)) {
        const std::size_t n = d_.size();
        for (Element i = 0; i < n; ++i) by_label_.emplace(d_.labels[i], i);
        for (Element y = 0; y < n; ++y) {
            for (auto x = d_.down[y].find_first(); x != Bitset::npos; x = d_.down[y].find_next(x)) {
                if (x != y && (d_.up[x] & d_.down[y]).count() == 2) covers_.emplace_back(x, y);
            }
        }
        std::sort(covers_.begin(), covers_.end());
    }

    detail::OrderData d_;
    std::vector<std::pair<Element, Element>> covers_;
    std::unordered_map<std::string, Element> by_label_;
};

inline const char* axiom_statement(char axiom) {
    switch (axiom) {
        case 'A': return "e <= f implies f' <= e'";
        case 'B': return "(e')' = e";
        case 'C': return "e <= f' implies e v f exists";
        case 'D': return "e v e' = 1";
        case 'E': return "f <= e implies e = f v (e ^ f')";
    }
    return "?";
}

/// Returns the first axiom violation of a description whose order is a
/// bounded partial order with an involutive ortho map, or nullopt.
/// Throws for descriptions that do not get that far.
inline std::optional<AxiomWitness> check_axioms(const LogicDescription& raw,
                                                const LogicConfig& cfg = {}) {
    return detail::first_axiom_violation(detail::build_order(raw, cfg));
}

inline FiniteLogic validate_logic(const LogicDescription& raw, const LogicConfig& cfg = {}) {
    auto d = detail::build_order(raw, cfg);
    if (auto w = detail::first_axiom_violation(d)) {
        throw Error(ErrorKind::AxiomViolation,
                    std::string("axiom (") + w->axiom + ") " + axiom_statement(w->axiom) +
                        " fails for '" + d.labels[w->first] + "', '" + d.labels[w->second] + "'",
                    {w->first, w->second}, w->axiom);
    }
    return FiniteLogic(std::move(d));
}

/// Canonical description: labels in canonical order, Hasse edges as the
/// generating pairs.
inline LogicDescription describe(const FiniteLogic& L) {
    LogicDescription d;
    d.labels = L.labels();
    d.le_pairs = L.covers();
    d.ortho.resize(L.size());
    for (Element e = 0; e < L.size(); ++e) d.ortho[e] = L.ortho(e);
    d.zero_index = L.zero();
    d.one_index = L.one();
    return d;
}

inline bool orthogonal(const FiniteLogic& L, Element e, Element f) {
    return L.leq(e, L.ortho(f));
}

inline std::optional<Element> try_sup(const FiniteLogic& L, Element e, Element f) {
    return detail::sup(L.order_data(), e, f);
}

inline std::optional<Element> try_inf(const FiniteLogic& L, Element e, Element f) {
    return detail::inf(L.order_data(), e, f);
}

inline Element sup(const FiniteLogic& L, Element e, Element f) {
    if (auto s = try_sup(L, e, f)) return *s;
    throw Error(ErrorKind::NoSupremum,
                "'" + L.label(e) + "' and '" + L.label(f) + "' have no least upper bound", {e, f});
}

inline Element inf(const FiniteLogic& L, Element e, Element f) {
    if (auto s = try_inf(L, e, f)) return *s;
    throw Error(ErrorKind::NoInfimum,
                "'" + L.label(e) + "' and '" + L.label(f) + "' have no greatest lower bound", {e, f});
}

inline bool is_atom(const FiniteLogic& L, Element e) {
    return e != L.zero() && L.down_count(e) == 2;
}

inline std::vector<Element> atoms(const FiniteLogic& L) {
    std::vector<Element> out;
    for (Element e = 0; e < L.size(); ++e) {
        if (is_atom(L, e)) out.push_back(e);
    }
    return out;
}

/// Atoms below e as a bitset over element indices.
inline Bitset atoms_below(const FiniteLogic& L, Element e) {
    Bitset out(L.size());
    const auto& dn = L.down(e);
    for (auto x = dn.find_first(); x != Bitset::npos; x = dn.find_next(x)) {
        if (is_atom(L, x)) out.set(x);
    }
    return out;
}

}  // namespace qlogic
