#pragma once

// Morphisms between finite logics, the dual map on states, automorphism
// enumeration, and checks of the transfer of transition probabilities along
// morphisms.

#include "qlogic/errors.hpp"
#include "qlogic/logic.hpp"
#include "qlogic/state_space.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

namespace qlogic {

/// Order- and complement-preserving, unit-preserving map E -> F.
struct Morphism {
    LogicPtr source;
    LogicPtr target;
    std::vector<Element> map;

    Element operator()(Element e) const { return map[e]; }
};

struct Automorphism {
    Morphism forward;
    std::vector<Element> inverse;

    Element operator()(Element e) const { return forward.map[e]; }
};

inline Morphism validate_morphism(LogicPtr E, LogicPtr F, std::vector<Element> map) {
    const FiniteLogic& src = *E;
    const FiniteLogic& dst = *F;
    if (map.size() != src.size()) {
        throw Error(ErrorKind::InvalidInput, "morphism map has " + std::to_string(map.size()) +
                                                 " entries, source has " + std::to_string(src.size()));
    }
    for (Element x : map) {
        if (x >= dst.size()) throw Error(ErrorKind::InvalidInput, "morphism image out of range", {x});
    }
    if (map[src.one()] != dst.one()) {
        throw Error(ErrorKind::UnitNotPreserved, "1 maps to '" + dst.label(map[src.one()]) + "'",
                    {src.one()});
    }
    for (Element e = 0; e < src.size(); ++e) {
        if (map[src.ortho(e)] != dst.ortho(map[e])) {
            throw Error(ErrorKind::OrthoNotPreserved, "T('" + src.label(e) + "'') != T('" + src.label(e) + "')'",
                        {e});
        }
    }
    for (Element a = 0; a < src.size(); ++a) {
        const auto& up = src.up(a);
        for (auto b = up.find_first(); b != Bitset::npos; b = up.find_next(b)) {
            if (!dst.leq(map[a], map[b])) {
                throw Error(ErrorKind::NotOrderPreserving,
                            "'" + src.label(a) + "' <= '" + src.label(b) + "' but images are not ordered",
                            {a, b});
            }
        }
    }
    return Morphism{std::move(E), std::move(F), std::move(map)};
}

inline bool is_injective(const Morphism& T) {
    std::vector<bool> hit(T.target->size(), false);
    for (Element x : T.map) {
        if (hit[x]) return false;
        hit[x] = true;
    }
    return true;
}

inline Automorphism make_automorphism(LogicPtr L, std::vector<Element> map) {
    Morphism T = validate_morphism(L, L, std::move(map));
    if (!is_injective(T)) throw Error(ErrorKind::InvalidInput, "automorphism must be bijective");
    std::vector<Element> inv(T.map.size());
    for (Element e = 0; e < T.map.size(); ++e) inv[T.map[e]] = e;
    validate_morphism(L, L, inv);
    return Automorphism{std::move(T), std::move(inv)};
}

/// (T* rho)(e) = rho(T e).
inline State dual_state(const Morphism& T, const State& rho) {
    State out;
    out.values.reserve(T.map.size());
    for (Element e = 0; e < T.map.size(); ++e) out.values.push_back(rho(T.map[e]));
    return out;
}

inline State dual_state(const Automorphism& T, const State& rho) { return dual_state(T.forward, rho); }

struct AutomorphismOptions {
    std::size_t node_budget = 10'000'000;
};

namespace detail {

/// Backtracking over atom images; every element is then sent to the
/// element carrying the image atom set. Finite orthomodular posets are
/// atomistic, so this reaches every automorphism; candidates are accepted
/// only after the full order/complement check.
class AtomAutomorphismSearch {
public:
    AtomAutomorphismSearch(const FiniteLogic& L, const AutomorphismOptions& opt,
                           const std::function<bool(const std::vector<Element>&)>& visit)
        : L_(L), opt_(opt), visit_(visit) {}

    /// False when the logic is not atomistic over <= 64 atoms.
    bool applicable() {
        atoms_ = atoms(L_);
        if (atoms_.size() > 64) return false;
        std::vector<std::size_t> atom_pos(L_.size(), SIZE_MAX);
        for (std::size_t i = 0; i < atoms_.size(); ++i) atom_pos[atoms_[i]] = i;
        mask_.assign(L_.size(), 0);
        for (Element x = 0; x < L_.size(); ++x) {
            const auto& dn = L_.down(x);
            for (auto a = dn.find_first(); a != Bitset::npos; a = dn.find_next(a)) {
                if (atom_pos[a] != SIZE_MAX) mask_[x] |= std::uint64_t{1} << atom_pos[a];
            }
            if (!by_mask_.emplace(mask_[x], x).second) return false;
        }
        const std::size_t k = atoms_.size();
        orth_.assign(k * k, false);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) orth_[i * k + j] = orthogonal(L_, atoms_[i], atoms_[j]);
        }
        signature_.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t o = 0;
            for (std::size_t j = 0; j < k; ++j) o += orth_[i * k + j];
            signature_[i] = {L_.up(atoms_[i]).count(), o};
        }
        return true;
    }

    std::size_t run() {
        image_.assign(atoms_.size(), 0);
        used_.assign(atoms_.size(), false);
        map_.assign(L_.size(), 0);
        stop_ = false;
        assign(0);
        return found_;
    }

private:
    void assign(std::size_t i) {
        if (stop_) return;
        if (++nodes_ > opt_.node_budget) {
            throw Error(ErrorKind::SearchBudgetExceeded,
                        "automorphism search exceeded " + std::to_string(opt_.node_budget) + " nodes");
        }
        const std::size_t k = atoms_.size();
        if (i == k) {
            if (complete()) {
                ++found_;
                if (!visit_(map_)) stop_ = true;
            }
            return;
        }
        for (std::size_t j = 0; j < k && !stop_; ++j) {
            if (used_[j] || signature_[j] != signature_[i]) continue;
            bool ok = true;
            for (std::size_t p = 0; p < i && ok; ++p) ok = orth_[i * k + p] == orth_[j * k + image_[p]];
            if (!ok) continue;
            used_[j] = true;
            image_[i] = j;
            assign(i + 1);
            used_[j] = false;
        }
    }

    bool complete() {
        const std::size_t k = atoms_.size();
        for (Element x = 0; x < L_.size(); ++x) {
            std::uint64_t m = 0;
            for (std::uint64_t rest = mask_[x]; rest; rest &= rest - 1) {
                m |= std::uint64_t{1} << image_[static_cast<std::size_t>(__builtin_ctzll(rest))];
            }
            auto it = by_mask_.find(m);
            if (it == by_mask_.end()) return false;
            map_[x] = it->second;
        }
        (void)k;
        for (Element x = 0; x < L_.size(); ++x) {
            if (map_[L_.ortho(x)] != L_.ortho(map_[x])) return false;
        }
        for (const auto& [x, y] : L_.covers()) {
            if (!L_.leq(map_[x], map_[y])) return false;
        }
        return true;
    }

    const FiniteLogic& L_;
    const AutomorphismOptions& opt_;
    const std::function<bool(const std::vector<Element>&)>& visit_;
    std::vector<Element> atoms_;
    std::vector<std::uint64_t> mask_;
    std::unordered_map<std::uint64_t, Element> by_mask_;
    std::vector<bool> orth_;
    std::vector<std::pair<std::size_t, std::size_t>> signature_;
    std::vector<std::size_t> image_;
    std::vector<bool> used_;
    std::vector<Element> map_;
    std::size_t nodes_ = 0;
    std::size_t found_ = 0;
    bool stop_ = false;
};

/// Element-by-element backtracking with order and complement constraints.
class ElementAutomorphismSearch {
public:
    ElementAutomorphismSearch(const FiniteLogic& L, const AutomorphismOptions& opt,
                              const std::function<bool(const std::vector<Element>&)>& visit)
        : L_(L), opt_(opt), visit_(visit) {}

    std::size_t run() {
        const std::size_t n = L_.size();
        map_.assign(n, SIZE_MAX);
        used_.assign(n, false);
        assign(0);
        return found_;
    }

private:
    void assign(Element x) {
        if (stop_) return;
        if (++nodes_ > opt_.node_budget) {
            throw Error(ErrorKind::SearchBudgetExceeded,
                        "automorphism search exceeded " + std::to_string(opt_.node_budget) + " nodes");
        }
        const std::size_t n = L_.size();
        if (x == n) {
            ++found_;
            if (!visit_(map_)) stop_ = true;
            return;
        }
        if (map_[x] != SIZE_MAX) {
            assign(x + 1);
            return;
        }
        for (Element y = 0; y < n && !stop_; ++y) {
            if (used_[y] || L_.down_count(y) != L_.down_count(x) || L_.up(y).count() != L_.up(x).count()) continue;
            const Element ox = L_.ortho(x), oy = L_.ortho(y);
            if ((ox == x) != (oy == y)) continue;
            if (map_[ox] != SIZE_MAX) {
                if (map_[ox] != oy) continue;
            } else if (ox != x && used_[oy]) {
                continue;
            }
            bool ok = true;
            for (Element z = 0; z < n && ok; ++z) {
                if (map_[z] == SIZE_MAX) continue;
                ok = L_.leq(z, x) == L_.leq(map_[z], y) && L_.leq(x, z) == L_.leq(y, map_[z]);
            }
            if (!ok) continue;
            map_[x] = y;
            used_[y] = true;
            bool paired = false;
            if (ox != x && map_[ox] == SIZE_MAX) {
                ok = true;
                for (Element z = 0; z < n && ok; ++z) {
                    if (map_[z] == SIZE_MAX) continue;
                    ok = L_.leq(z, ox) == L_.leq(map_[z], oy) && L_.leq(ox, z) == L_.leq(oy, map_[z]);
                }
                if (!ok) {
                    map_[x] = SIZE_MAX;
                    used_[y] = false;
                    continue;
                }
                map_[ox] = oy;
                used_[oy] = true;
                paired = true;
            }
            assign(x + 1);
            if (paired) {
                map_[ox] = SIZE_MAX;
                used_[oy] = false;
            }
            map_[x] = SIZE_MAX;
            used_[y] = false;
        }
    }

    const FiniteLogic& L_;
    const AutomorphismOptions& opt_;
    const std::function<bool(const std::vector<Element>&)>& visit_;
    std::vector<Element> map_;
    std::vector<bool> used_;
    std::size_t nodes_ = 0;
    std::size_t found_ = 0;
    bool stop_ = false;
};

}  // namespace detail

/// Streams every automorphism map in deterministic order. The visitor
/// returns false to stop early. Returns the number of automorphisms visited.
inline std::size_t for_each_automorphism(const FiniteLogic& L,
                                         const std::function<bool(const std::vector<Element>&)>& visit,
                                         const AutomorphismOptions& opt = {}) {
    detail::AtomAutomorphismSearch by_atoms(L, opt, visit);
    if (by_atoms.applicable()) return by_atoms.run();
    detail::ElementAutomorphismSearch by_elements(L, opt, visit);
    return by_elements.run();
}

/// Same enumeration without the atom shortcut; used to cross-check it.
inline std::size_t for_each_automorphism_elementwise(
    const FiniteLogic& L, const std::function<bool(const std::vector<Element>&)>& visit,
    const AutomorphismOptions& opt = {}) {
    detail::ElementAutomorphismSearch by_elements(L, opt, visit);
    return by_elements.run();
}

inline std::vector<Automorphism> automorphisms(const LogicPtr& L, const AutomorphismOptions& opt = {}) {
    std::vector<Automorphism> out;
    for_each_automorphism(
        *L,
        [&](const std::vector<Element>& map) {
            std::vector<Element> inv(map.size());
            for (Element e = 0; e < map.size(); ++e) inv[map[e]] = e;
            out.push_back(Automorphism{Morphism{L, L, map}, std::move(inv)});
            return true;
        },
        opt);
    return out;
}

inline std::size_t automorphism_count(const FiniteLogic& L, const AutomorphismOptions& opt = {}) {
    return for_each_automorphism(L, [](const std::vector<Element>&) { return true; }, opt);
}

// ---------------------------------------------------------------- transfer checks

struct Lemma1aReport {
    Element e1, e2;
    Element image1, image2;
    Rational source_value;  // P(e2|e1) in the source
    Rational target_value;  // P(T e2|T e1) in the target
};

/// P(e2|e1) exists with T e1 != 0  =>  P(T e2|T e1) exists and is equal.
inline Lemma1aReport check_lemma1a(const Morphism& T, const StatePolytope& source_states,
                                   const StatePolytope& target_states, Element e1, Element e2) {
    const FiniteLogic& E = *T.source;
    const FiniteLogic& F = *T.target;
    auto src = transition_probability(source_states, e2, e1);
    if (!src.exists) {
        throw Error(ErrorKind::PreconditionFailed,
                    "P('" + E.label(e2) + "'|'" + E.label(e1) + "') does not exist", {e1, e2});
    }
    if (T(e1) == F.zero()) throw Error(ErrorKind::PreconditionFailed, "T e1 = 0", {e1});
    auto dst = transition_probability(target_states, T(e2), T(e1));
    if (!dst.exists || dst.s != src.s) {
        throw Error(ErrorKind::LemmaViolated,
                    "P(Te2|Te1) " + (dst.exists ? "= " + to_string(dst.s) : std::string("does not exist")) +
                        " but P(e2|e1) = " + to_string(src.s),
                    {e1, e2});
    }
    return {e1, e2, T(e1), T(e2), src.s, dst.s};
}

struct Lemma1bReport {
    Element atom;
    Element preimage;
    State pulled_back;  // T* P_f
    State atomic;       // P_{T^-1 f}
};

/// T* P_f = P_{T^-1 f} for an atom f.
inline Lemma1bReport check_lemma1b(const Automorphism& T, const StatePolytope& states, Element f) {
    const FiniteLogic& L = *T.forward.target;
    if (!is_atom(L, f)) throw Error(ErrorKind::NotAnAtom, "'" + L.label(f) + "' is not an atom", {f});
    const Element pre = T.inverse[f];
    if (!is_atom(L, pre)) {
        throw Error(ErrorKind::LemmaViolated, "T^-1 of atom '" + L.label(f) + "' is not an atom", {f, pre});
    }
    State pulled = dual_state(T, atomic_state(states, f));
    State atomic = atomic_state(states, pre);
    if (pulled != atomic) {
        throw Error(ErrorKind::LemmaViolated, "T* P_f differs from P_{T^-1 f}", {f, pre});
    }
    return {f, pre, std::move(pulled), std::move(atomic)};
}

}  // namespace qlogic
