#pragma once

// Cloning transformations: ambient automorphisms that copy the first
// subsystem's atomic state onto the second one, prepared in a fixed atomic
// state f.

#include "qlogic/composite.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/morphisms.hpp"
#include "qlogic/state_space.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qlogic {

/// Clone problem over a composite model: the atoms in C are to be copied
/// onto the blank atom f.
class CloneProblem {
public:
    CloneProblem(CompositeModel& model, std::vector<Element> C, Element f) : model_(&model), C_(std::move(C)), f_(f) {
        const FiniteLogic& E = model.factor();
        if (C_.empty()) throw Error(ErrorKind::InvalidInput, "C must not be empty");
        std::sort(C_.begin(), C_.end());
        C_.erase(std::unique(C_.begin(), C_.end()), C_.end());
        for (Element e : C_) {
            if (e >= E.size() || !is_atom(E, e)) throw Error(ErrorKind::NotAnAtom, "C member is not an atom", {e});
        }
        if (f >= E.size() || !is_atom(E, f)) throw Error(ErrorKind::NotAnAtom, "f is not an atom", {f});
        model.require_I();
        model.require_J();
        model.require_ambient_fgh();
        for (Element e : C_) {
            blank_.push_back(meet_embed(model.composite(), e, f));
            copied_.push_back(meet_embed(model.composite(), e, e));
            inputs_.push_back(atomic_state(model.ambient_states(), blank_.back()));
        }
    }

    CompositeModel& model() const { return *model_; }
    const CompositeLogic& composite() const { return model_->composite(); }
    const std::vector<Element>& C() const { return C_; }
    Element f() const { return f_; }
    /// (pi1 e) ^ (pi2 f) for each e in C.
    const std::vector<Element>& blank_atoms() const { return blank_; }
    /// (pi1 e) ^ (pi2 e) for each e in C.
    const std::vector<Element>& copied_atoms() const { return copied_; }
    /// P_{(pi1 e) ^ (pi2 f)}: the only states with the prescribed restrictions.
    const std::vector<State>& input_states() const { return inputs_; }

private:
    CompositeModel* model_;
    std::vector<Element> C_;
    Element f_;
    std::vector<Element> blank_;
    std::vector<Element> copied_;
    std::vector<State> inputs_;
};

/// Both criteria for a candidate automorphism: the state-level definition
/// (over the atomic input states) and the grid-atom identity
/// T^-1((pi1 e) ^ (pi2 f)) = (pi1 e) ^ (pi2 e).
struct CloningVerdict {
    bool by_definition = false;
    bool by_preimage = false;
    bool agree() const { return by_definition == by_preimage; }
};

namespace detail {

inline bool copies_state(const CompositeLogic& C, const std::vector<Element>& T, const State& rho) {
    const FiniteLogic& E = *C.factor;
    for (Element a = 0; a < E.size(); ++a) {
        const Rational& pulled1 = rho(T[C.pi1(a)]);
        if (pulled1 != rho(C.pi1(a)) || pulled1 != rho(T[C.pi2(a)])) return false;
    }
    return true;
}

inline CloningVerdict cloning_verdict(const CloneProblem& P, const std::vector<Element>& T,
                                      const std::vector<Element>& T_inverse) {
    CloningVerdict v{true, true};
    for (std::size_t i = 0; i < P.C().size(); ++i) {
        if (v.by_definition && !copies_state(P.composite(), T, P.input_states()[i])) v.by_definition = false;
        if (v.by_preimage && T_inverse[P.blank_atoms()[i]] != P.copied_atoms()[i]) v.by_preimage = false;
    }
    return v;
}

}  // namespace detail

inline void require_ambient_automorphism(const CloneProblem& P, const Automorphism& T) {
    if (T.forward.source.get() != P.composite().ambient.get() && !(*T.forward.source == P.model().ambient())) {
        throw Error(ErrorKind::InvalidInput, "automorphism is not defined on the ambient logic");
    }
}

/// Evaluates both criteria; the definition is evaluated on the atomic input
/// states, which are the only states with the prescribed restrictions.
inline CloningVerdict cloning_criteria(const CloneProblem& P, const Automorphism& T) {
    require_ambient_automorphism(P, T);
    return detail::cloning_verdict(P, T.forward.map, T.inverse);
}

inline bool is_cloning_transformation(const CloneProblem& P, const Automorphism& T) {
    auto v = cloning_criteria(P, T);
    if (!v.agree()) {
        throw Error(ErrorKind::CheckFailed, "state criterion and preimage criterion disagree");
    }
    return v.by_definition;
}

/// Same question answered from the vertex list of the ambient state space.
/// P_e and P_f are extreme, so the states with those restrictions form a
/// face; the copy conditions are linear in rho, so testing the face's
/// vertices decides them. Also checks that each face is a single vertex.
inline bool is_cloning_transformation_by_vertices(const CloneProblem& P, const Automorphism& T) {
    require_ambient_automorphism(P, T);
    CompositeModel& M = P.model();
    const CompositeLogic& C = P.composite();
    const State pf = atomic_state(M.factor_states(), P.f());
    std::vector<State> pe;
    for (Element e : P.C()) pe.push_back(atomic_state(M.factor_states(), e));
    std::size_t qualifying = 0;
    for (const State& rho : M.ambient_states().vertices()) {
        if (restrict_second(C, rho) != pf) continue;
        State first = restrict_first(C, rho);
        if (std::find(pe.begin(), pe.end(), first) == pe.end()) continue;
        ++qualifying;
        if (!detail::copies_state(C, T.forward.map, rho)) return false;
    }
    if (qualifying != P.C().size()) {
        throw Error(ErrorKind::CheckFailed, "expected one extreme input state per member of C, found " +
                                                std::to_string(qualifying));
    }
    return true;
}

/// Swaps (pi1 e) ^ (pi2 e) with (pi1 e) ^ (pi2 f) for e in C, fixes the
/// remaining atoms, and extends to the ambient Boolean algebra by joins.
inline Automorphism classical_cloner(const CloneProblem& P) {
    const FiniteLogic& L = P.model().ambient();
    if (!is_boolean_logic(L)) throw Error(ErrorKind::NotBoolean, "the ambient logic is not Boolean");
    const auto at = atoms(L);
    if (at.size() > 64) throw Error(ErrorKind::InvalidInput, "more than 64 ambient atoms");
    std::vector<Element> atom_image(L.size());
    for (Element a : at) atom_image[a] = a;
    for (std::size_t i = 0; i < P.C().size(); ++i) {
        atom_image[P.copied_atoms()[i]] = P.blank_atoms()[i];
        atom_image[P.blank_atoms()[i]] = P.copied_atoms()[i];
    }
    std::vector<std::size_t> pos(L.size(), 0);
    for (std::size_t i = 0; i < at.size(); ++i) pos[at[i]] = i;
    std::vector<std::uint64_t> mask(L.size(), 0);
    std::unordered_map<std::uint64_t, Element> by_mask;
    for (Element x = 0; x < L.size(); ++x) {
        for (std::size_t i = 0; i < at.size(); ++i) {
            if (L.leq(at[i], x)) mask[x] |= std::uint64_t{1} << i;
        }
        by_mask[mask[x]] = x;
    }
    std::vector<Element> map(L.size());
    for (Element x = 0; x < L.size(); ++x) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < at.size(); ++i) {
            if (mask[x] >> i & 1u) m |= std::uint64_t{1} << pos[atom_image[at[i]]];
        }
        auto it = by_mask.find(m);
        if (it == by_mask.end()) throw Error(ErrorKind::ConstructionFailed, "atom set has no join");
        map[x] = it->second;
    }
    Automorphism T;
    try {
        T = make_automorphism(P.composite().ambient, std::move(map));
    } catch (const Error& err) {
        throw Error(ErrorKind::ConstructionFailed, std::string("extension is not an automorphism: ") + err.what());
    }
    if (!is_cloning_transformation(P, T)) {
        throw Error(ErrorKind::ConstructionFailed, "constructed automorphism does not clone C");
    }
    return T;
}

// ---------------------------------------------------------------- search

struct CloneSearchOptions {
    AutomorphismOptions automorphisms;
    /// Keep enumerating after the first cloner to count all of them.
    bool exhaustive = true;
};

struct CloneReport {
    std::vector<Element> C;
    Element f = 0;
    std::optional<Automorphism> cloner;  // first in enumeration order
    std::size_t cloner_count = 0;        // all cloners when the search was exhaustive
    std::size_t examined = 0;
    std::size_t criteria_divergences = 0;
    std::vector<std::vector<TransitionProbability>> pairwise;  // [i][j] = P(C[j] | C[i])
    bool orthogonal = true;
    bool theorem_consistent = true;
};

namespace detail {

inline CloneReport empty_report(const CloneProblem& P) {
    CloneReport r;
    r.C = P.C();
    r.f = P.f();
    const FiniteLogic& E = P.model().factor();
    const auto& S = P.model().factor_states();
    for (Element e1 : P.C()) {
        std::vector<TransitionProbability> row;
        for (Element e2 : P.C()) {
            row.push_back(transition_probability(S, e2, e1));
            if (e1 != e2 && !orthogonal(E, e1, e2)) r.orthogonal = false;
        }
        r.pairwise.push_back(std::move(row));
    }
    return r;
}

inline void finish_report(CloneReport& r) { r.theorem_consistent = !r.cloner || r.orthogonal; }

}  // namespace detail

/// Runs every problem against a single pass over the ambient automorphisms.
/// All problems must share the same composite model.
inline std::vector<CloneReport> clone_sweep(const std::vector<CloneProblem>& problems,
                                            const CloneSearchOptions& opt = {}) {
    std::vector<CloneReport> reports;
    if (problems.empty()) return reports;
    CompositeModel* model = &problems.front().model();
    for (const auto& P : problems) {
        if (&P.model() != model) throw Error(ErrorKind::InvalidInput, "clone problems use different composites");
        reports.push_back(detail::empty_report(P));
    }
    const LogicPtr& L = problems.front().composite().ambient;
    std::vector<Element> inverse(L->size());
    std::size_t open = problems.size();
    for_each_automorphism(
        *L,
        [&](const std::vector<Element>& map) {
            for (Element e = 0; e < map.size(); ++e) inverse[map[e]] = e;
            for (std::size_t p = 0; p < problems.size(); ++p) {
                CloneReport& r = reports[p];
                if (!opt.exhaustive && r.cloner) continue;
                ++r.examined;
                auto v = detail::cloning_verdict(problems[p], map, inverse);
                if (!v.agree()) ++r.criteria_divergences;
                if (!v.by_definition) continue;
                ++r.cloner_count;
                if (!r.cloner) {
                    r.cloner = Automorphism{Morphism{L, L, map}, inverse};
                    if (!opt.exhaustive) --open;
                }
            }
            return opt.exhaustive || open > 0;
        },
        opt.automorphisms);
    for (auto& r : reports) detail::finish_report(r);
    return reports;
}

inline CloneReport clone_search(const CloneProblem& P, const CloneSearchOptions& opt = {}) {
    std::vector<CloneProblem> one{P};
    return clone_sweep(one, opt).front();
}

// ---------------------------------------------------------------- certificate

struct CertificateEntry {
    Element e1, e2;
    Rational s;       // P(e2|e1) in the factor
    Rational direct;  // P((pi1 e2) ^ (pi2 f) | (pi1 e1) ^ (pi2 f))
    Rational pulled;  // same quantity evaluated through the cloner: s^2
};

struct Theorem1Certificate {
    Automorphism cloner;
    std::vector<CertificateEntry> entries;
};

/// Replays the no-cloning argument for each pair in C: the direct
/// evaluation yields s, the evaluation through T^-1 yields s^2, and their
/// equality leaves s in {0, 1}.
inline Theorem1Certificate theorem1_certificate(const CloneProblem& P,
                                                std::optional<Automorphism> T = std::nullopt,
                                                const CloneSearchOptions& opt = {}) {
    if (!T) {
        CloneSearchOptions first = opt;
        first.exhaustive = false;
        auto r = clone_search(P, first);
        if (!r.cloner) throw Error(ErrorKind::PreconditionFailed, "no cloning transformation exists for C");
        T = std::move(r.cloner);
    }
    if (!is_cloning_transformation(P, *T)) {
        throw Error(ErrorKind::PreconditionFailed, "supplied automorphism is not a cloning transformation");
    }
    CompositeModel& M = P.model();
    const auto& SE = M.factor_states();
    const auto& SL = M.ambient_states();
    const FiniteLogic& E = M.factor();
    Theorem1Certificate cert{*T, {}};
    for (std::size_t i = 0; i < P.C().size(); ++i) {
        for (std::size_t j = 0; j < P.C().size(); ++j) {
            const Element e1 = P.C()[i], e2 = P.C()[j];
            auto fail = [&](const std::string& what) {
                return Error(ErrorKind::CertificateFailed,
                             "pair ('" + E.label(e1) + "', '" + E.label(e2) + "'): " + what, {e1, e2});
            };
            auto s = transition_probability(SE, e2, e1);
            if (!s.exists) throw fail("P(e2|e1) does not exist");
            auto direct = transition_probability(SL, P.blank_atoms()[j], P.blank_atoms()[i]);
            auto pulled =
                transition_probability(SL, T->inverse[P.blank_atoms()[j]], T->inverse[P.blank_atoms()[i]]);
            if (!direct.exists || !pulled.exists) throw fail("ambient transition probability does not exist");
            CertificateEntry entry{e1, e2, s.s, direct.s, pulled.s};
            if (direct.s != s.s) {
                throw fail("direct route gives " + to_string(direct.s) + ", expected " + to_string(s.s));
            }
            if (pulled.s != s.s * s.s) {
                throw fail("pulled-back route gives " + to_string(pulled.s) + ", expected " +
                           to_string(Rational(s.s * s.s)));
            }
            if (direct.s != pulled.s || (s.s != 0 && s.s != 1)) {
                throw fail("s = " + to_string(s.s) + " but s^2 = " + to_string(pulled.s));
            }
            cert.entries.push_back(entry);
        }
    }
    return cert;
}

}  // namespace qlogic
