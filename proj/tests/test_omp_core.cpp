#include "support.hpp"

#include "qlogic/logic.hpp"

using namespace qlogic;
using namespace qtest;

namespace {

LogicDescription four_element(std::vector<std::size_t> ortho) {
    LogicDescription d;
    d.labels = {"0", "a", "a'", "1"};
    d.le_pairs = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    d.ortho = std::move(ortho);
    d.zero_index = 0;
    d.one_index = 3;
    return d;
}

std::vector<LogicDescription> valid_descriptions() {
    std::vector<LogicDescription> out;
    for (std::size_t k = 1; k <= 5; ++k) out.push_back(boolean_algebra(k));
    for (std::size_t n = 1; n <= 5; ++n) out.push_back(mo_lantern(n));
    out.push_back(grid_with_dead_atoms());
    out.push_back(greechie_pasting({{"a", "b", "c"}, {"c", "d", "e"}}));
    out.push_back(greechie_pasting({{"a", "b", "c"}, {"c", "d", "e"}, {"e", "f", "g"}}));
    out.push_back(read_description(fixture_path("MO2.json")));
    return out;
}

}  // namespace

TEST(ValidateLogic, FourElementBooleanAlgebra) {
    auto L = validate_logic(four_element({3, 2, 1, 0}));
    EXPECT_EQ(L.size(), 4u);
    EXPECT_EQ(L.label(L.zero()), "0");
    EXPECT_EQ(L.label(L.one()), "1");
}

TEST(ValidateLogic, HexagonFailsOrthomodularLawAtXY) {
    auto d = hexagon();
    try {
        validate_logic(d);
        FAIL() << "hexagon validated";
    } catch (const Error& err) {
        ASSERT_EQ(err.kind(), ErrorKind::AxiomViolation);
        EXPECT_EQ(err.axiom(), 'E');
        ASSERT_EQ(err.witness().size(), 2u);
        auto order = detail::build_order(d, {});
        EXPECT_EQ(order.labels[err.witness()[0]], "x");
        EXPECT_EQ(order.labels[err.witness()[1]], "y");
    }
}

TEST(ValidateLogic, HexagonFixtureMatchesBuilder) {
    auto w = check_axioms(read_description(fixture_path("O6.json")));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->axiom, 'E');
}

TEST(ValidateLogic, HexagonWitnessConfirmedByHand) {
    // y != x v (y ^ x'): y ^ x' = 0, so the right side is x.
    auto d = detail::build_order(hexagon(), {});
    RawView v{d};
    Element x = 1, y = 2;
    ASSERT_EQ(d.labels[x], "x");
    ASSERT_EQ(d.labels[y], "y");
    auto m = naive_inf(v, y, v.ortho(x));
    ASSERT_TRUE(m);
    EXPECT_EQ(*m, 0u);
    EXPECT_EQ(naive_sup(v, x, *m), std::optional<Element>(x));
}

TEST(ValidateLogic, SelfOrthocomplementIsRejected) {
    auto d = four_element({3, 1, 2, 0});
    try {
        validate_logic(d);
        FAIL() << "accepted a' = a";
    } catch (const Error& err) {
        EXPECT_TRUE(err.kind() == ErrorKind::OrthoNotInvolutive ||
                    (err.kind() == ErrorKind::AxiomViolation && err.axiom() == 'D'))
            << err.what();
    }
}

TEST(ValidateLogic, NonInvolutiveOrtho) {
    EXPECT_QERROR(validate_logic(four_element({3, 2, 0, 1})), ErrorKind::OrthoNotInvolutive);
}

TEST(ValidateLogic, CycleIsNotAPartialOrder) {
    auto d = four_element({3, 2, 1, 0});
    d.le_pairs.push_back({1, 2});
    d.le_pairs.push_back({2, 1});
    EXPECT_QERROR(validate_logic(d), ErrorKind::NotAPartialOrder);
}

TEST(ValidateLogic, MissingBounds) {
    LogicDescription d;
    d.labels = {"0", "a", "b", "1"};
    d.le_pairs = {{0, 1}, {1, 3}, {2, 3}};
    d.ortho = {3, 2, 1, 0};
    d.zero_index = 0;
    d.one_index = 3;
    EXPECT_QERROR(validate_logic(d), ErrorKind::NoBounds);
    d.one_index = 0;
    EXPECT_QERROR(validate_logic(d), ErrorKind::NoBounds);
}

TEST(ValidateLogic, MalformedInput) {
    auto d = four_element({3, 2, 1});
    EXPECT_QERROR(validate_logic(d), ErrorKind::InvalidInput);
    d = four_element({3, 2, 1, 0});
    d.labels[2] = "a";
    EXPECT_QERROR(validate_logic(d), ErrorKind::InvalidInput);
    d = four_element({3, 2, 1, 0});
    d.le_pairs.push_back({0, 9});
    EXPECT_QERROR(validate_logic(d), ErrorKind::InvalidInput);
}

TEST(ValidateLogic, CanonicalIndicesFromShuffledInput) {
    LogicDescription d;
    d.labels = {"1", "a", "0", "a'"};
    d.le_pairs = {{2, 1}, {2, 3}, {1, 0}, {3, 0}};
    d.ortho = {2, 3, 0, 1};
    d.zero_index = 2;
    d.one_index = 0;
    auto L = validate_logic(d);
    EXPECT_EQ(L.label(0), "0");
    EXPECT_EQ(L.label(L.one()), "1");
    EXPECT_EQ(L.from_raw(2), 0u);
    EXPECT_EQ(L.from_raw(0), L.one());
    EXPECT_EQ(L.ortho(L.element("a")), L.element("a'"));
}

TEST(Orthogonal, ComplementPairs) {
    for (const auto& d : valid_descriptions()) {
        auto L = validate_logic(d);
        for (Element e = 0; e < L.size(); ++e) EXPECT_TRUE(orthogonal(L, e, L.ortho(e)));
    }
}

TEST(Orthogonal, DistinctAtomsOfBoolean) {
    auto L = fixture("boolean3");
    auto at = atoms(*L);
    for (Element a : at) {
        for (Element b : at) {
            if (a != b) EXPECT_TRUE(orthogonal(*L, a, b));
        }
    }
}

TEST(Orthogonal, DifferentBlocksOfMO2) {
    auto L = fixture("MO2");
    EXPECT_FALSE(orthogonal(*L, el(*L, "a"), el(*L, "b")));
    EXPECT_TRUE(orthogonal(*L, el(*L, "a"), el(*L, "a'")));
}

TEST(SupInf, ComplementJoinIsOne) {
    for (const auto& d : valid_descriptions()) {
        auto L = validate_logic(d);
        for (Element e = 0; e < L.size(); ++e) {
            EXPECT_EQ(sup(L, e, L.ortho(e)), L.one());
            EXPECT_EQ(L.ortho(L.ortho(e)), e);
        }
    }
}

TEST(SupInf, DifferentBlocksOfMO2MeetAtZero) {
    auto L = fixture("MO2");
    EXPECT_EQ(inf(*L, el(*L, "a"), el(*L, "b")), L->zero());
    EXPECT_EQ(sup(*L, el(*L, "a"), el(*L, "b")), L->one());
}

TEST(SupInf, TwoMinimalUpperBounds) {
    // 0 < x, y < u, v < 1 with u, v incomparable.
    LogicDescription d;
    d.labels = {"0", "x", "y", "u", "v", "1"};
    d.le_pairs = {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}};
    d.ortho = {5, 2, 1, 4, 3, 0};
    d.zero_index = 0;
    d.one_index = 5;
    auto order = detail::build_order(d, {});
    EXPECT_FALSE(detail::sup(order, 1, 2).has_value());
    EXPECT_FALSE(detail::inf(order, 3, 4).has_value());
    RawView v{order};
    EXPECT_FALSE(naive_sup(v, 1, 2).has_value());
}

TEST(SupInf, AgreeWithNaiveScanAndRaiseWhenMissing) {
    std::size_t missing = 0;
    for (const auto& d : valid_descriptions()) {
        auto L = validate_logic(d);
        for (Element a = 0; a < L.size(); ++a) {
            for (Element b = 0; b < L.size(); ++b) {
                auto s = naive_sup(L, a, b);
                auto m = naive_inf(L, a, b);
                EXPECT_EQ(try_sup(L, a, b), s);
                EXPECT_EQ(try_inf(L, a, b), m);
                if (!s) {
                    ++missing;
                    EXPECT_QERROR(sup(L, a, b), ErrorKind::NoSupremum);
                }
                if (!m) EXPECT_QERROR(inf(L, a, b), ErrorKind::NoInfimum);
            }
        }
    }
    // The grid pasting has square loops, so it is not a lattice.
    EXPECT_GT(missing, 0u);
}

TEST(SupInf, DeMorgan) {
    for (const auto& d : valid_descriptions()) {
        auto L = validate_logic(d);
        for (Element e = 0; e < L.size(); ++e) {
            for (Element f = 0; f < L.size(); ++f) {
                auto s = try_sup(L, e, f);
                if (!s) continue;
                auto m = try_inf(L, L.ortho(e), L.ortho(f));
                ASSERT_TRUE(m) << L.label(e) << ", " << L.label(f);
                EXPECT_EQ(*m, L.ortho(*s));
            }
        }
    }
}

TEST(Atoms, PowersetSingletons) {
    auto L = fixture("boolean3");
    std::vector<std::string> got;
    for (Element a : atoms(*L)) got.push_back(L->label(a));
    EXPECT_EQ(got, (std::vector<std::string>{"x", "y", "z"}));
}

TEST(Atoms, MO2MiddleElements) {
    auto L = fixture("MO2");
    std::vector<std::string> got;
    for (Element a : atoms(*L)) got.push_back(L->label(a));
    EXPECT_EQ(got, (std::vector<std::string>{"a", "a'", "b", "b'"}));
}

TEST(Atoms, TopOfTwoElementLogic) {
    auto L = fixture("boolean1");
    EXPECT_TRUE(is_atom(*L, L->one()));
    EXPECT_FALSE(is_atom(*L, L->zero()));
}

TEST(Atoms, CoverOnlyZero) {
    for (const auto& d : valid_descriptions()) {
        auto L = validate_logic(d);
        for (Element e = 1; e < L.size(); ++e) {
            std::size_t below = 0;
            for (Element x = 0; x < L.size(); ++x) below += L.leq(x, e) ? 1 : 0;
            EXPECT_EQ(is_atom(L, e), below == 2);
        }
    }
}

TEST(Properties, ValidatorAgreesWithNaiveOrthomodularScan) {
    auto descs = valid_descriptions();
    descs.push_back(hexagon());
    for (const auto& d : descs) {
        auto order = detail::build_order(d, {});
        RawView v{order};
        bool naive = naive_orthomodular(v);
        auto w = check_axioms(d);
        bool e_ok = !w || w->axiom != 'E';
        EXPECT_EQ(naive, e_ok);
        bool valid = true;
        try {
            validate_logic(d);
        } catch (const Error&) {
            valid = false;
        }
        EXPECT_EQ(valid, !w.has_value());
    }
}

TEST(Properties, SerializationRoundTrip) {
    for (const auto& d : valid_descriptions()) {
        auto L = validate_logic(d);
        auto again = validate_logic(description_from_json(Json::parse(to_json(describe(L)).dump())));
        EXPECT_TRUE(again == L);
        for (Element e = 0; e < L.size(); ++e) {
            EXPECT_EQ(again.ortho(e), L.ortho(e));
            EXPECT_EQ(again.up(e), L.up(e));
        }
    }
}

TEST(Properties, RawFileRoundTrip) {
    auto d = read_description(fixture_path("MO3.json"));
    auto L = validate_logic(d);
    auto again = validate_logic(description_from_json(Json::parse(dump_description(d))));
    EXPECT_TRUE(again == L);
}

TEST(Config, ElementLimit) {
    LogicConfig cfg;
    cfg.max_elements = 8;
    EXPECT_NO_THROW(validate_logic(boolean_algebra(3), cfg));
    EXPECT_QERROR(validate_logic(boolean_algebra(4), cfg), ErrorKind::InvalidInput);
}
