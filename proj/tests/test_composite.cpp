#include "support.hpp"

#include "qlogic/composite.hpp"
#include "qlogic/files.hpp"

using namespace qlogic;
using namespace qtest;

namespace {

CompositeLogic identity_composite(const LogicPtr& L) {
    return make_composite(L, L, all_elements(*L), all_elements(*L));
}

// Ambient transition probability in a Boolean product computed from grid
// atoms: the face of `given` is the set of point masses below it.
std::optional<Rational> grid_transition(const FiniteLogic& L, Element given, Element target) {
    std::size_t in = 0, total = 0;
    for (Element a : atoms(L)) {
        if (!L.leq(a, given)) continue;
        ++total;
        if (L.leq(a, target)) ++in;
    }
    if (total == 0 || (in != 0 && in != total)) return std::nullopt;
    return Rational(in == total ? 1 : 0);
}

}  // namespace

TEST(BooleanProduct, TwoByTwo) {
    auto C = boolean_product(fixture("boolean2"));
    EXPECT_EQ(C.ambient->size(), 16u);
    EXPECT_EQ(atoms(*C.ambient).size(), 4u);
    EXPECT_EQ(C.checked_I, CheckState::Holds);
    EXPECT_EQ(C.checked_J, CheckState::Holds);
    const FiniteLogic& E = *C.factor;
    const FiniteLogic& L = *C.ambient;
    EXPECT_EQ(L.label(meet_embed(C, E.element("e2"), E.element("e1"))), "(e2,e1)");
}

TEST(BooleanProduct, MatchesBundledFixture) {
    LogicCache cache;
    auto F = read_composite(fixture_path("prod22.json"), cache);
    auto C = boolean_product(fixture("boolean2"));
    EXPECT_TRUE(*F.ambient == *C.ambient);
    EXPECT_EQ(F.pi1.map, C.pi1.map);
    EXPECT_EQ(F.pi2.map, C.pi2.map);
}

TEST(BooleanProduct, TwoElementFactor) {
    auto C = boolean_product(fixture("boolean1"));
    EXPECT_EQ(C.ambient->size(), 2u);
    EXPECT_EQ(C.pi1.map, (std::vector<Element>{0, 1}));
    EXPECT_EQ(C.pi2.map, (std::vector<Element>{0, 1}));
}

TEST(BooleanProduct, RejectsNonBoolean) {
    EXPECT_QERROR(boolean_product(fixture("MO2")), ErrorKind::NotBoolean);
    EXPECT_QERROR(boolean_product(fixture("boolean4")), ErrorKind::InvalidInput);
}

TEST(BooleanProduct, AlwaysSatisfiesIAndJ) {
    for (const auto& name : {"boolean1", "boolean2", "boolean3"}) {
        auto C = boolean_product(fixture(name));
        EXPECT_TRUE(check_condition_I(C).holds) << name;
        EXPECT_TRUE(check_condition_J(C).holds) << name;
        EXPECT_TRUE(is_boolean_logic(*C.ambient));
        EXPECT_EQ(atoms(*C.ambient).size(), atoms(*C.factor).size() * atoms(*C.factor).size());
    }
}

TEST(ConditionI, IdentityOverMO2Fails) {
    auto C = identity_composite(fixture("MO2"));
    auto v = check_condition_I(C);
    EXPECT_FALSE(v.holds);
    ASSERT_TRUE(v.counterexample);
    EXPECT_EQ(C.checked_I, CheckState::Fails);
}

TEST(ConditionIJ, TwoElementFactorHolds) {
    auto C = identity_composite(fixture("boolean1"));
    EXPECT_TRUE(check_condition_I(C).holds);
    EXPECT_TRUE(check_condition_J(C).holds);
}

TEST(ConditionJ, IdentityOverBooleanFails) {
    auto C = identity_composite(fixture("boolean2"));
    EXPECT_TRUE(check_condition_I(C).holds);
    auto v = check_condition_J(C);
    EXPECT_FALSE(v.holds);
    ASSERT_TRUE(v.failing_atoms);
    EXPECT_NE(v.failing_atoms->first, v.failing_atoms->second);
    EXPECT_EQ(v.meet, std::optional<Element>(C.ambient->zero()));
}

TEST(MakeComposite, RequiresInjections) {
    auto E = fixture("boolean2");
    auto B = fixture("boolean1");
    // 2^2 -> 2^1 cannot preserve complements injectively.
    EXPECT_ANY_THROW(make_composite(E, B, {0, 1, 0, 1}, {0, 1, 0, 1}));
}

TEST(MeetEmbed, Examples) {
    auto C = boolean_product(fixture("boolean2"));
    const FiniteLogic& E = *C.factor;
    EXPECT_EQ(meet_embed(C, E.one(), E.one()), C.ambient->one());
    for (Element f = 0; f < E.size(); ++f) EXPECT_EQ(meet_embed(C, E.zero(), f), C.ambient->zero());
    for (Element e : atoms(E)) {
        for (Element f : atoms(E)) EXPECT_TRUE(is_atom(*C.ambient, meet_embed(C, e, f)));
    }
}

TEST(Restriction, StatesRestrictToStates) {
    for (const auto& name : {"boolean2", "boolean3"}) {
        CompositeModel M(boolean_product(fixture(name)));
        std::vector<State> states = M.ambient_states().vertices();
        states.push_back(uniform_over(states));
        for (const auto& rho : states) {
            EXPECT_FALSE(state_violation(M.factor(), restrict_first(M.composite(), rho)));
            EXPECT_FALSE(state_violation(M.factor(), restrict_second(M.composite(), rho)));
        }
    }
}

TEST(Lemma2, Examples) {
    CompositeModel M(boolean_product(fixture("boolean2")));
    const FiniteLogic& E = M.factor();
    const Element a = E.element("e1"), b = E.element("e2");
    auto same = check_lemma2(M, a, a, b, b);
    EXPECT_EQ(same.joint, 1);
    EXPECT_EQ(same.pe * same.pf, 1);
    auto orth = check_lemma2(M, a, b, b, b);
    EXPECT_EQ(orth.joint, 0);
    auto mixed = check_lemma2(M, a, a, b, E.ortho(b));
    EXPECT_EQ(mixed.pe, 1);
    EXPECT_EQ(mixed.pf, 0);
    EXPECT_EQ(mixed.joint, 0);
}

TEST(Lemma2, UndefinedFactorIsAPrecondition) {
    CompositeModel M(boolean_product(fixture("boolean3")));
    const FiniteLogic& E = M.factor();
    EXPECT_QERROR(check_lemma2(M, E.element("{x,y}"), E.element("x"), E.element("x"), E.element("x")),
                  ErrorKind::PreconditionFailed);
}

TEST(Lemma2, RequiresConditionI) {
    CompositeModel M(identity_composite(fixture("MO2")));
    const Element a = M.factor().element("a");
    EXPECT_QERROR(check_lemma2(M, a, a, a, a), ErrorKind::PreconditionFailed);
}

TEST(Lemma2, ExhaustiveOnBooleanProducts) {
    for (const auto& name : {"boolean1", "boolean2", "boolean3"}) {
        CompositeModel M(boolean_product(fixture(name)));
        const FiniteLogic& E = M.factor();
        const auto& S = M.factor_states();
        std::size_t checked = 0;
        for (Element e1 = 1; e1 < E.size(); ++e1) {
            for (Element f1 = 1; f1 < E.size(); ++f1) {
                for (Element e2 = 0; e2 < E.size(); ++e2) {
                    if (!transition_probability(S, e2, e1).exists) continue;
                    for (Element f2 = 0; f2 < E.size(); ++f2) {
                        if (!transition_probability(S, f2, f1).exists) continue;
                        auto r = check_lemma2(M, e1, e2, f1, f2);
                        EXPECT_EQ(r.joint, r.pe * r.pf);
                        auto oracle = grid_transition(M.ambient(), r.given, r.target);
                        ASSERT_TRUE(oracle);
                        EXPECT_EQ(*oracle, r.joint);
                        ++checked;
                    }
                }
            }
        }
        EXPECT_GT(checked, 0u);
    }
}

TEST(Lemma3, AtomicStateOfGridAtom) {
    CompositeModel M(boolean_product(fixture("boolean2")));
    const FiniteLogic& E = M.factor();
    const Element e = E.element("e1"), f = E.element("e2");
    auto rho = atomic_state(M.ambient_states(), meet_embed(M.composite(), e, f));
    auto r = check_lemma3(M, e, f, rho);
    EXPECT_TRUE(r.restrictions_atomic);
    EXPECT_TRUE(r.rho_atomic);
    EXPECT_EQ(r.first, atomic_state(M.factor_states(), e));
    EXPECT_EQ(r.second, atomic_state(M.factor_states(), f));
}

TEST(Lemma3, MixtureOfTwoGridAtoms) {
    CompositeModel M(boolean_product(fixture("boolean2")));
    const FiniteLogic& E = M.factor();
    const Element e = E.element("e1"), f = E.element("e2");
    auto p = atomic_state(M.ambient_states(), meet_embed(M.composite(), e, e));
    auto q = atomic_state(M.ambient_states(), meet_embed(M.composite(), f, f));
    auto rho = mixture(p, q, Rational(1, 2));
    for (Element x : atoms(E)) {
        for (Element y : atoms(E)) {
            auto r = check_lemma3(M, x, y, rho);
            EXPECT_FALSE(r.restrictions_atomic);
            EXPECT_FALSE(r.rho_atomic);
        }
    }
}

TEST(Lemma3, TwoElementFactor) {
    CompositeModel M(boolean_product(fixture("boolean1")));
    const Element one = M.factor().one();
    auto r = check_lemma3(M, one, one, M.ambient_states().vertices()[0]);
    EXPECT_TRUE(r.restrictions_atomic);
    EXPECT_TRUE(r.rho_atomic);
}

TEST(Lemma3, EveryVertexEveryAtomPair) {
    for (const auto& name : {"boolean2", "boolean3"}) {
        CompositeModel M(boolean_product(fixture(name)));
        const FiniteLogic& E = M.factor();
        for (const auto& rho : M.ambient_states().vertices()) {
            std::size_t atomic_pairs = 0;
            for (Element e : atoms(E)) {
                for (Element f : atoms(E)) {
                    auto r = check_lemma3(M, e, f, rho);
                    atomic_pairs += r.rho_atomic ? 1 : 0;
                }
            }
            // Every vertex is the point mass of exactly one grid atom.
            EXPECT_EQ(atomic_pairs, 1u);
        }
    }
}

TEST(Lemma3, RejectsNonAtomsAndNonStates) {
    CompositeModel M(boolean_product(fixture("boolean2")));
    const FiniteLogic& E = M.factor();
    const auto& rho = M.ambient_states().vertices()[0];
    EXPECT_QERROR(check_lemma3(M, E.one(), E.element("e1"), rho), ErrorKind::NotAnAtom);
    State bad = rho;
    bad.values[M.ambient().one()] = Rational(1, 2);
    EXPECT_QERROR(check_lemma3(M, E.element("e1"), E.element("e1"), bad), ErrorKind::InvalidInput);
}
