#pragma once

// Generators for the standard small logics: Boolean algebras, the MO_n
// lanterns, the (non-orthomodular) hexagon, and pastings of Boolean blocks
// given as Greechie diagrams.

#include "qlogic/errors.hpp"
#include "qlogic/logic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qlogic {

/// Label of a subset of named atoms: "0", "1", the atom itself, or "{a,b}".
inline std::string subset_label(const std::vector<std::string>& atom_labels, std::uint64_t mask) {
    const std::size_t k = atom_labels.size();
    if (mask == 0) return "0";
    if (k < 64 && mask == (std::uint64_t{1} << k) - 1) return "1";
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1u) parts.push_back(atom_labels[i]);
    }
    if (parts.size() == 1) return parts[0];
    std::string s = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
    return s + "}";
}

/// The Boolean algebra of all subsets of the given atoms; element index is
/// the subset bitmask.
inline LogicDescription boolean_algebra(const std::vector<std::string>& atom_labels) {
    const std::size_t k = atom_labels.size();
    if (k > 16) throw Error(ErrorKind::InvalidInput, "Boolean algebra with more than 16 atoms");
    const std::uint64_t n = std::uint64_t{1} << k;
    LogicDescription d;
    for (std::uint64_t m = 0; m < n; ++m) {
        d.labels.push_back(subset_label(atom_labels, m));
        d.ortho.push_back((n - 1) ^ m);
        for (std::size_t i = 0; i < k; ++i) {
            if (!(m >> i & 1u)) d.le_pairs.emplace_back(m, m | (std::uint64_t{1} << i));
        }
    }
    d.zero_index = 0;
    d.one_index = n - 1;
    return d;
}

/// 2^k with default atom names: k = 1 gives {0, 1};
/// k = 2 uses e1, e2; k = 3 uses x, y, z; otherwise a, b, c, ...
inline LogicDescription boolean_algebra(std::size_t k) {
    std::vector<std::string> names;
    if (k == 1) return boolean_algebra(std::vector<std::string>{"1"});
    if (k == 2) names = {"e1", "e2"};
    else if (k == 3) names = {"x", "y", "z"};
    else {
        for (std::size_t i = 0; i < k; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    return boolean_algebra(names);
}

/// MO_n: n complementary pairs pasted at 0 and 1.
inline LogicDescription mo_lantern(std::size_t pairs) {
    LogicDescription d;
    d.labels.push_back("0");
    d.ortho.push_back(0);
    for (std::size_t i = 0; i < pairs; ++i) {
        std::string a(1, static_cast<char>('a' + i));
        d.labels.push_back(a);
        d.labels.push_back(a + "'");
    }
    const std::size_t one = d.labels.size();
    d.labels.push_back("1");
    d.ortho.assign(d.labels.size(), 0);
    d.ortho[0] = one;
    d.ortho[one] = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        std::size_t a = 1 + 2 * i;
        d.ortho[a] = a + 1;
        d.ortho[a + 1] = a;
        for (std::size_t x : {a, a + 1}) {
            d.le_pairs.emplace_back(0, x);
            d.le_pairs.emplace_back(x, one);
        }
    }
    if (pairs == 0) d.le_pairs.emplace_back(0, one);
    d.zero_index = 0;
    d.one_index = one;
    return d;
}

/// The hexagon {0, x, y, y', x', 1} with x < y and y' < x'; an ortholattice
/// that is not orthomodular.
inline LogicDescription hexagon() {
    LogicDescription d;
    d.labels = {"0", "x", "y", "y'", "x'", "1"};
    d.le_pairs = {{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}};
    d.ortho = {5, 4, 3, 2, 1, 0};
    d.zero_index = 0;
    d.one_index = 5;
    return d;
}

/// Pasting of Boolean blocks along shared atoms (Greechie diagram). Each
/// block lists its atoms; two blocks may share at most one atom. Blocks of
/// two atoms must not share atoms with larger blocks.
inline LogicDescription greechie_pasting(const std::vector<std::vector<std::string>>& blocks) {
    // Element key: "0", "1", "a" (atom), "a'" (its complement), or the block
    // subset label for everything else.
    std::map<std::string, std::size_t> index;
    std::vector<std::string> labels{"0"};
    index["0"] = 0;
    std::vector<std::pair<std::string, std::string>> le;
    std::vector<std::pair<std::string, std::string>> ortho_pairs;

    auto key_of = [&](const std::vector<std::string>& block, std::uint64_t mask) -> std::string {
        const std::size_t k = block.size();
        const std::uint64_t full = (std::uint64_t{1} << k) - 1;
        if (mask == 0) return "0";
        if (mask == full) return "1";
        if (__builtin_popcountll(mask) == 1) return subset_label(block, mask);
        if (__builtin_popcountll(full ^ mask) == 1) return subset_label(block, full ^ mask) + "'";
        return subset_label(block, mask);
    };

    for (const auto& block : blocks) {
        if (block.size() < 2 || block.size() > 16) {
            throw Error(ErrorKind::InvalidInput, "blocks need 2..16 atoms");
        }
        const std::uint64_t full = (std::uint64_t{1} << block.size()) - 1;
        for (std::uint64_t m = 1; m < full; ++m) {
            std::string k = key_of(block, m);
            if (!index.count(k)) {
                index[k] = labels.size();
                labels.push_back(k);
            }
            ortho_pairs.emplace_back(k, key_of(block, full ^ m));
            for (std::size_t i = 0; i < block.size(); ++i) {
                if (!(m >> i & 1u)) le.emplace_back(k, key_of(block, m | (std::uint64_t{1} << i)));
            }
            if (__builtin_popcountll(m) == 1) le.emplace_back("0", k);
        }
    }
    index["1"] = labels.size();
    labels.push_back("1");

    LogicDescription d;
    d.labels = labels;
    d.ortho.assign(labels.size(), 0);
    d.ortho[0] = labels.size() - 1;
    d.ortho[labels.size() - 1] = 0;
    for (const auto& [a, b] : ortho_pairs) d.ortho[index.at(a)] = index.at(b);
    for (const auto& [a, b] : le) d.le_pairs.emplace_back(index.at(a), index.at(b));
    std::sort(d.le_pairs.begin(), d.le_pairs.end());
    d.le_pairs.erase(std::unique(d.le_pairs.begin(), d.le_pairs.end()), d.le_pairs.end());
    d.zero_index = 0;
    d.one_index = labels.size() - 1;
    return d;
}

/// 3x3 grid of atoms pasted as three rows of three and three columns of
/// four (each column carries one extra atom x1..x3). Counting block sums
/// forces every state to vanish on x1, x2, x3.
inline LogicDescription grid_with_dead_atoms() {
    return greechie_pasting({{"a1", "a2", "a3"},
                             {"b1", "b2", "b3"},
                             {"c1", "c2", "c3"},
                             {"a1", "b1", "c1", "x1"},
                             {"a2", "b2", "c2", "x2"},
                             {"a3", "b3", "c3", "x3"}});
}

}  // namespace qlogic
