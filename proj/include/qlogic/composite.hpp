#pragma once

// Two embedded copies of a logic E inside an ambient logic L, the conditions
// relating them, the Boolean product construction, and the product rule for
// transition probabilities.

#include "qlogic/builders.hpp"
#include "qlogic/compatibility.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/logic.hpp"
#include "qlogic/morphisms.hpp"
#include "qlogic/state_space.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qlogic {

enum class CheckState { Unchecked, Holds, Fails };

inline const char* to_string(CheckState c) {
    switch (c) {
        case CheckState::Unchecked: return "unchecked";
        case CheckState::Holds: return "holds";
        case CheckState::Fails: return "fails";
    }
    return "?";
}

struct CompositeLogic {
    LogicPtr factor;
    LogicPtr ambient;
    Morphism pi1;
    Morphism pi2;
    CheckState checked_I = CheckState::Unchecked;
    CheckState checked_J = CheckState::Unchecked;
};

inline CompositeLogic make_composite(LogicPtr factor, LogicPtr ambient, std::vector<Element> pi1,
                                     std::vector<Element> pi2) {
    CompositeLogic c{factor, ambient, validate_morphism(factor, ambient, std::move(pi1)),
                     validate_morphism(factor, ambient, std::move(pi2))};
    if (!is_injective(c.pi1)) throw Error(ErrorKind::InvalidInput, "pi1 is not injective");
    if (!is_injective(c.pi2)) throw Error(ErrorKind::InvalidInput, "pi2 is not injective");
    return c;
}

/// True iff the whole logic is a Boolean algebra.
inline bool is_boolean_logic(const FiniteLogic& L) {
    Bitset all(L.size());
    all.set();
    return is_boolean_subset(L, all);
}

/// Image of a set under a morphism.
inline std::vector<Element> image(const Morphism& T) {
    std::vector<Element> out = T.map;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- (I), (J)

struct ConditionIVerdict {
    bool holds = true;
    // Compatible parts of pi1(E) and pi2(E) whose union is not compatible.
    std::optional<std::pair<std::vector<Element>, std::vector<Element>>> counterexample;
};

inline ConditionIVerdict check_condition_I(CompositeLogic& C, const CompatibilityOptions& opt = {}) {
    auto m = mutually_compatible(*C.ambient, image(C.pi1), image(C.pi2), opt);
    C.checked_I = m.holds ? CheckState::Holds : CheckState::Fails;
    return {m.holds, m.counterexample};
}

struct ConditionJVerdict {
    bool holds = true;
    std::optional<std::pair<Element, Element>> failing_atoms;  // atoms (e, f) of E
    std::optional<Element> meet;  // the non-atomic meet, absent when no meet exists
};

inline ConditionJVerdict check_condition_J(CompositeLogic& C) {
    const FiniteLogic& E = *C.factor;
    const FiniteLogic& L = *C.ambient;
    ConditionJVerdict out;
    for (Element e : atoms(E)) {
        for (Element f : atoms(E)) {
            auto m = try_inf(L, C.pi1(e), C.pi2(f));
            if (!m || !is_atom(L, *m)) {
                out.holds = false;
                out.failing_atoms = std::make_pair(e, f);
                out.meet = m;
                C.checked_J = CheckState::Fails;
                return out;
            }
        }
    }
    C.checked_J = CheckState::Holds;
    return out;
}

/// (pi1 e) ^ (pi2 f) in the ambient logic.
inline Element meet_embed(const CompositeLogic& C, Element e, Element f) {
    const FiniteLogic& E = *C.factor;
    if (e >= E.size() || f >= E.size()) throw Error(ErrorKind::InvalidInput, "element out of range");
    return inf(*C.ambient, C.pi1(e), C.pi2(f));
}

inline State restrict_first(const CompositeLogic& C, const State& rho) { return dual_state(C.pi1, rho); }
inline State restrict_second(const CompositeLogic& C, const State& rho) { return dual_state(C.pi2, rho); }

// ---------------------------------------------------------------- Boolean product

/// E x E on the grid of atom pairs: atoms of the ambient are "(a,b)" for
/// atoms a, b of E, pi1(e) = e x 1 and pi2(f) = 1 x f.
inline CompositeLogic boolean_product(const LogicPtr& E) {
    if (!is_boolean_logic(*E)) throw Error(ErrorKind::NotBoolean, "the factor is not a Boolean algebra");
    const auto at = atoms(*E);
    const std::size_t k = at.size();
    if (k * k > 12) {
        throw Error(ErrorKind::InvalidInput,
                    "product of " + std::to_string(k) + "-atom factors exceeds the supported size");
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) names.push_back("(" + E->label(at[i]) + "," + E->label(at[j]) + ")");
    }
    LogicConfig cfg;
    cfg.max_elements = std::max<std::size_t>(cfg.max_elements, std::size_t{1} << (k * k));
    LogicPtr L = share(validate_logic(boolean_algebra(names), cfg));

    std::vector<Element> pi1(E->size()), pi2(E->size());
    for (Element x = 0; x < E->size(); ++x) {
        std::uint64_t m1 = 0, m2 = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (!E->leq(at[i], x)) continue;
            for (std::size_t j = 0; j < k; ++j) {
                m1 |= std::uint64_t{1} << (i * k + j);
                m2 |= std::uint64_t{1} << (j * k + i);
            }
        }
        pi1[x] = m1;
        pi2[x] = m2;
    }
    CompositeLogic C = make_composite(E, L, std::move(pi1), std::move(pi2));
    if (!check_condition_I(C).holds || !check_condition_J(C).holds) {
        throw Error(ErrorKind::ConstructionFailed, "product algebra fails (I) or (J)");
    }
    return C;
}

// ---------------------------------------------------------------- analysis bundle

/// A composite together with lazily computed state polytopes and condition
/// verdicts for both logics.
class CompositeModel {
public:
    explicit CompositeModel(CompositeLogic C, StateOptions states = {}, CompatibilityOptions compat = {})
        : C_(std::move(C)), state_opt_(states), compat_(compat) {}

    CompositeLogic& composite() { return C_; }
    const CompositeLogic& composite() const { return C_; }
    const FiniteLogic& factor() const { return *C_.factor; }
    const FiniteLogic& ambient() const { return *C_.ambient; }

    const StatePolytope& factor_states() {
        if (!factor_states_) factor_states_.emplace(C_.factor, state_opt_);
        return *factor_states_;
    }
    const StatePolytope& ambient_states() {
        if (!ambient_states_) ambient_states_.emplace(C_.ambient, state_opt_);
        return *ambient_states_;
    }

    const ConditionIVerdict& condition_I() {
        if (!I_) I_ = check_condition_I(C_, compat_);
        return *I_;
    }
    const ConditionJVerdict& condition_J() {
        if (!J_) J_ = check_condition_J(C_);
        return *J_;
    }

    /// (F), (G), (H) on the ambient logic.
    bool ambient_fgh() {
        if (!ambient_fgh_) {
            const auto& P = ambient_states();
            ambient_fgh_ = check_condition_F(P).holds && check_condition_G(P).holds && check_condition_H(P).holds;
        }
        return *ambient_fgh_;
    }

    void require_I() {
        if (!condition_I().holds) throw Error(ErrorKind::PreconditionFailed, "condition (I) fails");
    }
    void require_J() {
        if (!condition_J().holds) throw Error(ErrorKind::PreconditionFailed, "condition (J) fails");
    }
    void require_ambient_fgh() {
        if (!ambient_fgh()) throw Error(ErrorKind::PreconditionFailed, "ambient logic fails (F), (G) or (H)");
    }

private:
    CompositeLogic C_;
    StateOptions state_opt_;
    CompatibilityOptions compat_;
    std::optional<StatePolytope> factor_states_;
    std::optional<StatePolytope> ambient_states_;
    std::optional<ConditionIVerdict> I_;
    std::optional<ConditionJVerdict> J_;
    std::optional<bool> ambient_fgh_;
};

// ---------------------------------------------------------------- product rule

struct Lemma2Report {
    Element e1, e2, f1, f2;
    Element given;   // (pi1 e1) ^ (pi2 f1)
    Element target;  // (pi1 e2) ^ (pi2 f2)
    Rational pe;     // P(e2|e1)
    Rational pf;     // P(f2|f1)
    Rational joint;  // P(target|given)
};

/// P((pi1 e2) ^ (pi2 f2) | (pi1 e1) ^ (pi2 f1)) = P(e2|e1) P(f2|f1).
inline Lemma2Report check_lemma2(CompositeModel& M, Element e1, Element e2, Element f1, Element f2) {
    const FiniteLogic& E = M.factor();
    M.require_I();
    auto te = transition_probability(M.factor_states(), e2, e1);
    auto tf = transition_probability(M.factor_states(), f2, f1);
    if (!te.exists) {
        throw Error(ErrorKind::PreconditionFailed,
                    "P('" + E.label(e2) + "'|'" + E.label(e1) + "') does not exist", {e1, e2});
    }
    if (!tf.exists) {
        throw Error(ErrorKind::PreconditionFailed,
                    "P('" + E.label(f2) + "'|'" + E.label(f1) + "') does not exist", {f1, f2});
    }
    const Element given = meet_embed(M.composite(), e1, f1);
    const Element target = meet_embed(M.composite(), e2, f2);
    auto joint = transition_probability(M.ambient_states(), target, given);
    const Rational expected = te.s * tf.s;
    if (!joint.exists || joint.s != expected) {
        throw Error(ErrorKind::LemmaViolated,
                    "joint transition " +
                        (joint.exists ? "= " + to_string(joint.s)
                                      : "ranges over [" + to_string(joint.min) + ", " + to_string(joint.max) + "]") +
                        ", product of factors = " + to_string(expected),
                    {e1, e2, f1, f2});
    }
    return {e1, e2, f1, f2, given, target, te.s, tf.s, joint.s};
}

struct Lemma3Report {
    Element e, f;
    Element meet;
    bool restrictions_atomic;  // rho o pi1 = P_e and rho o pi2 = P_f
    bool rho_atomic;           // rho = P_{meet}
    State first;
    State second;
};

/// rho o pi1 = P_e and rho o pi2 = P_f  <=>  rho = P_{(pi1 e) ^ (pi2 f)}.
inline Lemma3Report check_lemma3(CompositeModel& M, Element e, Element f, const State& rho) {
    const FiniteLogic& E = M.factor();
    if (!is_atom(E, e)) throw Error(ErrorKind::NotAnAtom, "'" + E.label(e) + "' is not an atom", {e});
    if (!is_atom(E, f)) throw Error(ErrorKind::NotAnAtom, "'" + E.label(f) + "' is not an atom", {f});
    M.require_I();
    M.require_J();
    M.require_ambient_fgh();
    if (auto why = state_violation(M.ambient(), rho)) {
        throw Error(ErrorKind::InvalidInput, "not a state on the ambient logic: " + *why);
    }
    const Element m = meet_embed(M.composite(), e, f);
    State first = restrict_first(M.composite(), rho);
    State second = restrict_second(M.composite(), rho);
    const bool lhs = first == atomic_state(M.factor_states(), e) && second == atomic_state(M.factor_states(), f);
    const bool rhs = rho == atomic_state(M.ambient_states(), m);
    if (lhs != rhs) {
        throw Error(ErrorKind::LemmaViolated,
                    std::string("restrictions atomic: ") + (lhs ? "true" : "false") +
                        ", rho atomic at the meet: " + (rhs ? "true" : "false"),
                    {e, f});
    }
    return {e, f, m, lhs, rhs, std::move(first), std::move(second)};
}

}  // namespace qlogic
