#pragma once

// JSON renderings of states, verdicts and reports, plus the parsers needed
// to re-check a report against the library. Rationals are written as
// strings ("1/2"); elements by label.

#include "qlogic/cloning.hpp"
#include "qlogic/compatibility.hpp"
#include "qlogic/composite.hpp"
#include "qlogic/hilbert.hpp"
#include "qlogic/logic_io.hpp"
#include "qlogic/morphisms.hpp"
#include "qlogic/state_space.hpp"

#include <string>
#include <vector>

namespace qlogic {

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Json labels_json(const FiniteLogic& L, const std::vector<Element>& xs) {
    Json j = Json::array();
    for (Element x : xs) j.push_back(L.label(x));
    return j;
}

inline Json state_json(const FiniteLogic& L, const State& s) {
    Json j = Json::object();
    for (Element e = 0; e < L.size(); ++e) j[L.label(e)] = rational_json(s(e));
    return j;
}

/// Reads either a label -> value object (as written by state_json) or a
/// state file {"values": [...]} in element order; validates the state axioms.
inline State state_from_json(const FiniteLogic& L, const Json& j) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "a state is an object from labels to values");
    if (j.contains("values")) {
        const Json& arr = j["values"];
        if (!arr.is_array() || arr.size() != L.size()) {
            throw Error(ErrorKind::InvalidInput, "\"values\" must list one rational per element");
        }
        std::vector<Rational> v;
        for (const auto& x : arr) {
            if (!x.is_string()) throw Error(ErrorKind::InvalidInput, "state values are rational strings");
            try {
                v.push_back(parse_rational(x.get<std::string>()));
            } catch (const std::invalid_argument& ex) {
                throw Error(ErrorKind::InvalidInput, ex.what());
            }
        }
        return make_state(L, std::move(v));
    }
    std::vector<Rational> v(L.size());
    std::vector<bool> seen(L.size(), false);
    for (auto it = j.begin(); it != j.end(); ++it) {
        Element e = L.element(it.key());
        if (!it.value().is_string()) throw Error(ErrorKind::InvalidInput, "state values are rational strings");
        try {
            v[e] = parse_rational(it.value().get<std::string>());
        } catch (const std::invalid_argument& ex) {
            throw Error(ErrorKind::InvalidInput, ex.what());
        }
        seen[e] = true;
    }
    for (Element e = 0; e < L.size(); ++e) {
        if (!seen[e]) throw Error(ErrorKind::InvalidInput, "state misses '" + L.label(e) + "'");
    }
    return make_state(L, std::move(v));
}

/// State file layout: {"logic": path, "values": [...]}.
inline Json state_file_json(const std::string& logic_path, const State& s) {
    Json j;
    j["logic"] = logic_path;
    Json v = Json::array();
    for (const auto& x : s.values) v.push_back(rational_json(x));
    j["values"] = std::move(v);
    return j;
}

inline Json automorphism_json(const FiniteLogic& L, const std::vector<Element>& map) {
    Json j;
    Json at = Json::object();
    for (Element a : atoms(L)) at[L.label(a)] = L.label(map[a]);
    j["atoms"] = std::move(at);
    j["map"] = map;
    return j;
}

inline Automorphism automorphism_from_json(const LogicPtr& L, const Json& j) {
    try {
        return make_automorphism(L, j.at("map").get<std::vector<Element>>());
    } catch (const Json::exception& ex) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed automorphism: ") + ex.what());
    }
}

inline Json transition_json(const TransitionProbability& t) {
    Json j;
    j["exists"] = t.exists;
    if (t.exists) {
        j["value"] = rational_json(t.s);
    } else {
        j["min"] = rational_json(t.min);
        j["max"] = rational_json(t.max);
    }
    return j;
}

// ---------------------------------------------------------------- logic-level verdicts

inline Json verdict_json(const FiniteLogic& L, const ConditionFVerdict& v) {
    Json j;
    j["condition"] = "F";
    j["holds"] = v.holds;
    if (v.witness_state) j["witness_state"] = state_json(L, *v.witness_state);
    if (v.failing_element) j["no_state_is_positive_on"] = L.label(*v.failing_element);
    return j;
}

inline Json verdict_json(const StatePolytope& P, const ConditionGVerdict& v) {
    const FiniteLogic& L = P.logic();
    Json j;
    j["condition"] = "G";
    j["holds"] = v.holds;
    if (v.e) j["e"] = L.label(*v.e);
    if (v.non_unique) {
        j["failure"] = "not unique";
        j["witness_states"] = Json::array({state_json(L, v.non_unique->first), state_json(L, v.non_unique->second)});
    }
    if (v.non_existent_vertex) {
        j["failure"] = "no conditional state";
        j["state"] = state_json(L, P.vertices()[*v.non_existent_vertex]);
    }
    return j;
}

inline Json verdict_json(const FiniteLogic& L, const ConditionHVerdict& v) {
    Json j;
    j["condition"] = "H";
    j["holds"] = v.holds;
    if (v.counterexample) {
        j["e"] = L.label(v.counterexample->first);
        j["f"] = L.label(v.counterexample->second);
    }
    j["empty_premise_pairs"] = v.empty_premise.size();
    return j;
}

inline Json conditional_json(const FiniteLogic& L, const ConditionalResult& r) {
    Json j;
    j["given"] = L.label(r.given);
    j["kind"] = to_string(r.kind);
    j["base_state"] = state_json(L, r.base);
    if (r.state) j["conditional_state"] = state_json(L, *r.state);
    if (r.witnesses) {
        j["witness_states"] = Json::array({state_json(L, r.witnesses->first), state_json(L, r.witnesses->second)});
    }
    if (r.separating_element) j["separating_element"] = L.label(*r.separating_element);
    Json d = Json::array();
    for (const auto& x : r.discrepancies) {
        d.push_back({{"f", L.label(x.f)},
                     {"expected", rational_json(x.expected)},
                     {"min", rational_json(x.observed_min)},
                     {"max", rational_json(x.observed_max)}});
    }
    j["compatible_discrepancies"] = std::move(d);
    return j;
}

// ---------------------------------------------------------------- composite

inline Json verdict_json(const CompositeLogic& C, const ConditionIVerdict& v) {
    Json j;
    j["condition"] = "I";
    j["holds"] = v.holds;
    if (v.counterexample) {
        j["first_part"] = labels_json(*C.ambient, v.counterexample->first);
        j["second_part"] = labels_json(*C.ambient, v.counterexample->second);
    }
    return j;
}

inline Json verdict_json(const CompositeLogic& C, const ConditionJVerdict& v) {
    Json j;
    j["condition"] = "J";
    j["holds"] = v.holds;
    if (v.failing_atoms) {
        j["e"] = C.factor->label(v.failing_atoms->first);
        j["f"] = C.factor->label(v.failing_atoms->second);
        j["meet"] = v.meet ? Json(C.ambient->label(*v.meet)) : Json(nullptr);
    }
    return j;
}

inline Json composite_summary_json(const CompositeLogic& C) {
    const FiniteLogic& E = *C.factor;
    const FiniteLogic& L = *C.ambient;
    Json j;
    j["factor_elements"] = E.size();
    j["ambient_elements"] = L.size();
    j["ambient_atoms"] = labels_json(L, atoms(L));
    Json p1 = Json::object(), p2 = Json::object();
    for (Element e = 0; e < E.size(); ++e) {
        p1[E.label(e)] = L.label(C.pi1(e));
        p2[E.label(e)] = L.label(C.pi2(e));
    }
    j["pi1"] = std::move(p1);
    j["pi2"] = std::move(p2);
    j["I"] = to_string(C.checked_I);
    j["J"] = to_string(C.checked_J);
    return j;
}

inline Json lemma_json(const Morphism& T, const Lemma1aReport& r) {
    Json j;
    j["lemma"] = "1a";
    j["e1"] = T.source->label(r.e1);
    j["e2"] = T.source->label(r.e2);
    j["Te1"] = T.target->label(r.image1);
    j["Te2"] = T.target->label(r.image2);
    j["source_value"] = rational_json(r.source_value);
    j["target_value"] = rational_json(r.target_value);
    j["holds"] = true;
    return j;
}

inline Json lemma_json(const FiniteLogic& L, const Lemma1bReport& r) {
    Json j;
    j["lemma"] = "1b";
    j["f"] = L.label(r.atom);
    j["preimage"] = L.label(r.preimage);
    j["pulled_back_state"] = state_json(L, r.pulled_back);
    j["holds"] = true;
    return j;
}

inline Json lemma_json(const CompositeLogic& C, const Lemma2Report& r) {
    const FiniteLogic& E = *C.factor;
    Json j;
    j["lemma"] = "2";
    j["e1"] = E.label(r.e1);
    j["e2"] = E.label(r.e2);
    j["f1"] = E.label(r.f1);
    j["f2"] = E.label(r.f2);
    j["given"] = C.ambient->label(r.given);
    j["target"] = C.ambient->label(r.target);
    j["P(e2|e1)"] = rational_json(r.pe);
    j["P(f2|f1)"] = rational_json(r.pf);
    j["joint"] = rational_json(r.joint);
    j["holds"] = true;
    return j;
}

inline Json lemma_json(const CompositeLogic& C, const Lemma3Report& r) {
    Json j;
    j["lemma"] = "3";
    j["e"] = C.factor->label(r.e);
    j["f"] = C.factor->label(r.f);
    j["meet"] = C.ambient->label(r.meet);
    j["restrictions_atomic"] = r.restrictions_atomic;
    j["state_atomic_at_meet"] = r.rho_atomic;
    j["holds"] = true;
    return j;
}

// ---------------------------------------------------------------- cloning

inline Json clone_report_json(const CompositeLogic& C, const CloneReport& r) {
    const FiniteLogic& E = *C.factor;
    Json j;
    j["C"] = labels_json(E, r.C);
    j["f"] = E.label(r.f);
    j["cloner_found"] = r.cloner.has_value();
    if (r.cloner) j["cloner"] = automorphism_json(*C.ambient, r.cloner->forward.map);
    j["cloners"] = r.cloner_count;
    j["automorphisms_examined"] = r.examined;
    j["criteria_divergences"] = r.criteria_divergences;
    Json table = Json::object();
    for (std::size_t a = 0; a < r.C.size(); ++a) {
        Json row = Json::object();
        for (std::size_t b = 0; b < r.C.size(); ++b) {
            const auto& t = r.pairwise[a][b];
            row[E.label(r.C[b])] = t.exists ? rational_json(t.s) : Json(nullptr);
        }
        table[E.label(r.C[a])] = std::move(row);
    }
    j["pairwise"] = std::move(table);
    j["orthogonal"] = r.orthogonal;
    j["theorem_consistent"] = r.theorem_consistent;
    return j;
}

inline Json certificate_json(const CompositeLogic& C, const Theorem1Certificate& cert) {
    const FiniteLogic& E = *C.factor;
    Json j;
    j["cloner"] = automorphism_json(*C.ambient, cert.cloner.forward.map);
    Json rows = Json::array();
    for (const auto& e : cert.entries) {
        rows.push_back({{"e1", E.label(e.e1)},
                        {"e2", E.label(e.e2)},
                        {"s", rational_json(e.s)},
                        {"direct", rational_json(e.direct)},
                        {"pulled_back", rational_json(e.pulled)}});
    }
    j["pairs"] = std::move(rows);
    j["certified"] = true;
    return j;
}

}  // namespace qlogic
