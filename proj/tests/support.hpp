#pragma once

// Shared helpers for the unit suites: fixture loading and small
// brute-force oracles that avoid the library's bitset machinery.

#include "qlogic/builders.hpp"
#include "qlogic/fixtures.hpp"
#include "qlogic/logic_io.hpp"
#include "qlogic/state_space.hpp"

#include <gtest/gtest.h>

#include <optional>
#include <string>
#include <vector>

namespace qtest {

using namespace qlogic;

inline std::filesystem::path fixture_path(const std::string& file) { return default_fixture_dir() / file; }

inline LogicPtr fixture(const std::string& name) { return share(read_logic(fixture_path(name + ".json"))); }

inline LogicPtr build(const LogicDescription& d) { return share(validate_logic(d)); }

inline Element el(const FiniteLogic& L, const std::string& label) { return L.element(label); }

// Order view over unvalidated order data, so the naive oracles below can
// run on descriptions that fail validation.
struct RawView {
    const detail::OrderData& d;
    std::size_t size() const { return d.size(); }
    bool leq(Element a, Element b) const { return d.leq(a, b); }
    Element ortho(Element e) const { return d.ortho[e]; }
};

// Least upper bound by scanning every element.
template <class L_>
std::optional<Element> naive_sup(const L_& L, Element a, Element b) {
    std::vector<Element> ub;
    for (Element u = 0; u < L.size(); ++u) {
        if (L.leq(a, u) && L.leq(b, u)) ub.push_back(u);
    }
    for (Element u : ub) {
        bool least = true;
        for (Element v : ub) least = least && L.leq(u, v);
        if (least) return u;
    }
    return std::nullopt;
}

template <class L_>
std::optional<Element> naive_inf(const L_& L, Element a, Element b) {
    std::vector<Element> lb;
    for (Element u = 0; u < L.size(); ++u) {
        if (L.leq(u, a) && L.leq(u, b)) lb.push_back(u);
    }
    for (Element u : lb) {
        bool greatest = true;
        for (Element v : lb) greatest = greatest && L.leq(v, u);
        if (greatest) return u;
    }
    return std::nullopt;
}

// Orthomodular law over all comparable pairs, with naive lattice lookups.
template <class L_>
bool naive_orthomodular(const L_& L) {
    for (Element e = 0; e < L.size(); ++e) {
        for (Element f = 0; f < L.size(); ++f) {
            if (!L.leq(f, e)) continue;
            auto m = naive_inf(L, e, L.ortho(f));
            if (!m) return false;
            auto s = naive_sup(L, f, *m);
            if (!s || *s != e) return false;
        }
    }
    return true;
}

inline std::vector<Element> all_elements(const FiniteLogic& L) {
    std::vector<Element> out(L.size());
    for (Element e = 0; e < L.size(); ++e) out[e] = e;
    return out;
}

inline State mixture(const State& a, const State& b, const Rational& lambda) {
    State s;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        s.values.push_back(lambda * a.values[i] + (Rational(1) - lambda) * b.values[i]);
    }
    return s;
}

inline State uniform_over(const std::vector<State>& vs) {
    State s;
    s.values.assign(vs.front().values.size(), Rational(0));
    for (const auto& v : vs) {
        for (std::size_t i = 0; i < v.values.size(); ++i) s.values[i] += v.values[i] / Rational(vs.size());
    }
    return s;
}

// Classical state on a Boolean fixture: weights per atom, value of an
// element = sum over atoms below it.
inline State classical_state(const FiniteLogic& L, const std::vector<Rational>& atom_weights) {
    auto at = atoms(L);
    State s;
    for (Element e = 0; e < L.size(); ++e) {
        Rational v = 0;
        for (std::size_t i = 0; i < at.size(); ++i) {
            if (L.leq(at[i], e)) v += atom_weights[i];
        }
        s.values.push_back(v);
    }
    return s;
}

inline std::vector<std::string> boolean_fixtures() { return {"boolean1", "boolean2", "boolean3", "boolean4"}; }

inline std::vector<std::string> valid_fixtures() {
    return {"boolean1", "boolean2", "boolean3", "boolean4", "MO1", "MO2", "MO3", "grid3x3"};
}

}  // namespace qtest

#define EXPECT_QERROR(stmt, kind_)                                                       \
    do {                                                                                 \
        try {                                                                            \
            stmt;                                                                        \
            ADD_FAILURE() << "expected " << ::qlogic::to_string(kind_) << ", no error"; \
        } catch (const ::qlogic::Error& err_) {                                          \
            EXPECT_EQ(err_.kind(), kind_) << err_.what();                                \
        }                                                                                \
    } while (0)
