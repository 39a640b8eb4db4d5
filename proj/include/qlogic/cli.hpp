#pragma once

// Command-line front end. Every subcommand builds one JSON document; the
// human format renders the same document as an indented listing.
// Exit codes: 0 holds/verified, 1 refuted, 2 input error, 3 budget exceeded.

#include "qlogic/cloning.hpp"
#include "qlogic/compatibility.hpp"
#include "qlogic/composite.hpp"
#include "qlogic/files.hpp"
#include "qlogic/hilbert.hpp"
#include "qlogic/hilbert_io.hpp"
#include "qlogic/logic_io.hpp"
#include "qlogic/morphisms.hpp"
#include "qlogic/reports.hpp"
#include "qlogic/state_space.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace qlogic::cli {

enum ExitCode : int { Holds = 0, Refuted = 1, InputError = 2, BudgetExceeded = 3 };

struct Outcome {
    Json doc;
    int code = Holds;
};

inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::SearchBudgetExceeded:
        case ErrorKind::VertexBudgetExceeded: return BudgetExceeded;
        case ErrorKind::LemmaViolated:
        case ErrorKind::CertificateFailed:
        case ErrorKind::CheckFailed:
        case ErrorKind::EquivalenceViolated:
        case ErrorKind::ConstructionFailed: return Refuted;
        default: return InputError;
    }
}

inline Json error_json(const Error& e) {
    Json j;
    j["error"] = to_string(e.kind());
    j["message"] = e.what();
    if (!e.witness().empty()) j["witness"] = e.witness();
    if (e.axiom()) j["axiom"] = std::string(1, e.axiom());
    return j;
}

// ---------------------------------------------------------------- rendering

namespace detail {

inline std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(12) << v.get<double>();
        return os.str();
    }
    return v.dump();
}

inline bool is_flat(const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& x : v) {
        if (x.is_structured() && !(x.is_array() && x.size() <= 2 && std::all_of(x.begin(), x.end(), [](const Json& y) {
                                       return y.is_primitive();
                                   }))) {
            return false;
        }
    }
    return true;
}

inline void render(const Json& v, std::ostream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            const Json& x = it.value();
            if (x.is_primitive()) {
                out << pad << it.key() << ": " << scalar_text(x) << '\n';
            } else if (is_flat(x)) {
                out << pad << it.key() << ": [";
                for (std::size_t i = 0; i < x.size(); ++i) out << (i ? ", " : "") << (x[i].is_primitive() ? scalar_text(x[i]) : x[i].dump());
                out << "]\n";
            } else {
                out << pad << it.key() << ":\n";
                render(x, out, indent + 2);
            }
        }
    } else if (v.is_array()) {
        for (const auto& x : v) {
            if (x.is_primitive()) {
                out << pad << "- " << scalar_text(x) << '\n';
            } else {
                out << pad << "-\n";
                render(x, out, indent + 2);
            }
        }
    } else {
        out << pad << scalar_text(v) << '\n';
    }
}

/// Splits a comma-separated label list; commas inside braces belong to the
/// label ("{x,y}").
inline std::vector<std::string> split_labels(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '{') ++depth;
        if (ch == '}') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

inline std::vector<Element> resolve(const FiniteLogic& L, const std::string& list) {
    std::vector<Element> out;
    for (const auto& label : split_labels(list)) out.push_back(L.element(label));
    return out;
}

}  // namespace detail

inline void render_human(const Json& doc, std::ostream& out) { detail::render(doc, out, 0); }

// ---------------------------------------------------------------- settings

struct Settings {
    std::string format = "human";
    std::size_t budget = 0;  // 0: library defaults
    std::uint64_t seed = 1;
    double tolerance = hilbert::default_tolerance;
    std::string method = "dd";

    CompatibilityOptions compat() const {
        CompatibilityOptions o;
        if (budget) o.node_budget = budget;
        return o;
    }
    AutomorphismOptions autos() const {
        AutomorphismOptions o;
        if (budget) o.node_budget = budget;
        return o;
    }
    StateOptions states() const {
        StateOptions o;
        o.method = method == "basis" ? VertexMethod::BasisEnumeration : VertexMethod::DoubleDescription;
        if (budget) {
            o.vertices.vertex_budget = budget;
            o.vertices.basis_budget = budget;
        }
        return o;
    }
};

// ---------------------------------------------------------------- logic commands

namespace commands {

inline Outcome validate(const std::string& file) {
    LogicDescription d = read_description(file);
    Json j;
    j["file"] = file;
    try {
        FiniteLogic L = validate_logic(d);
        j["valid"] = true;
        j["elements"] = L.size();
        j["atoms"] = labels_json(L, atoms(L));
        return {j, Holds};
    } catch (const Error& e) {
        switch (e.kind()) {
            case ErrorKind::AxiomViolation: {
                j["valid"] = false;
                j["axiom"] = std::string(1, e.axiom());
                j["statement"] = axiom_statement(e.axiom());
                auto order = qlogic::detail::build_order(d, {});
                Json w = Json::array();
                for (auto x : e.witness()) w.push_back(order.labels[x]);
                j["witness"] = w;
                return {j, Refuted};
            }
            case ErrorKind::NotAPartialOrder:
            case ErrorKind::NoBounds:
            case ErrorKind::OrthoNotInvolutive:
                j["valid"] = false;
                j["error"] = to_string(e.kind());
                j["message"] = e.what();
                return {j, Refuted};
            default: throw;
        }
    }
}

inline Outcome atoms_cmd(const std::string& file) {
    FiniteLogic L = read_logic(file);
    Json j;
    j["atoms"] = labels_json(L, atoms(L));
    return {j, Holds};
}

inline Outcome compat(const Settings& s, const std::string& file, const std::string& set, const std::string& with) {
    FiniteLogic L = read_logic(file);
    Json j;
    auto s1 = detail::resolve(L, set);
    j["set"] = labels_json(L, s1);
    if (with.empty()) {
        auto v = is_compatible_subset(L, s1, s.compat());
        j["compatible"] = v.compatible;
        if (v.witness_boolean_subalgebra) j["boolean_subalgebra"] = labels_json(L, *v.witness_boolean_subalgebra);
        return {j, v.compatible ? Holds : Refuted};
    }
    auto s2 = detail::resolve(L, with);
    j["with"] = labels_json(L, s2);
    auto m = mutually_compatible(L, s1, s2, s.compat());
    j["mutually_compatible"] = m.holds;
    if (m.counterexample) {
        j["first_part"] = labels_json(L, m.counterexample->first);
        j["second_part"] = labels_json(L, m.counterexample->second);
    }
    return {j, m.holds ? Holds : Refuted};
}

inline Outcome states(const Settings& s, const std::string& file) {
    StatePolytope P(read_logic(file), s.states());
    Json j;
    j["dimension"] = P.dimension();
    j["additivity_constraints"] = P.equalities().size();
    Json v = Json::array();
    for (const auto& x : P.vertices()) v.push_back(state_json(P.logic(), x));
    j["vertices"] = std::move(v);
    return {j, Holds};
}

inline Outcome check(const Settings& s, const std::string& which, const std::string& file) {
    StatePolytope P(read_logic(file), s.states());
    Json j;
    bool holds = false;
    if (which == "F") {
        auto v = check_condition_F(P);
        j = verdict_json(P.logic(), v);
        holds = v.holds;
    } else if (which == "G") {
        auto v = check_condition_G(P);
        j = verdict_json(P, v);
        holds = v.holds;
    } else if (which == "H") {
        auto v = check_condition_H(P);
        j = verdict_json(P.logic(), v);
        holds = v.holds;
    } else {
        throw Error(ErrorKind::InvalidInput, "unknown condition '" + which + "' (expected F, G or H)");
    }
    return {j, holds ? Holds : Refuted};
}

inline State pick_state(const StatePolytope& P, long vertex, const std::string& state_file) {
    if (!state_file.empty()) return state_from_json(P.logic(), read_json_file(state_file));
    if (vertex < 0 || static_cast<std::size_t>(vertex) >= P.vertices().size()) {
        throw Error(ErrorKind::InvalidInput, "vertex index out of range (" + std::to_string(P.vertices().size()) +
                                                 " vertices)");
    }
    return P.vertices()[static_cast<std::size_t>(vertex)];
}

inline Outcome condprob(const Settings& s, const std::string& file, const std::string& given, long vertex,
                        const std::string& state_file) {
    StatePolytope P(read_logic(file), s.states());
    const Element e = P.logic().element(given);
    auto r = conditional_probability(P, pick_state(P, vertex, state_file), e);
    const bool ok = r.kind == ConditionalKind::Unique && r.discrepancies.empty();
    return {conditional_json(P.logic(), r), ok ? Holds : Refuted};
}

inline Outcome transprob(const Settings& s, const std::string& file, const std::string& given,
                         const std::string& target) {
    StatePolytope P(read_logic(file), s.states());
    const Element e = P.logic().element(given);
    const Element f = P.logic().element(target);
    auto t = transition_probability(P, f, e);
    Json j;
    j["given"] = given;
    j["target"] = target;
    j["transition"] = transition_json(t);
    return {j, t.exists ? Holds : Refuted};
}

inline Outcome autos(const Settings& s, const std::string& file, std::size_t limit) {
    FiniteLogic L = read_logic(file);
    Json list = Json::array();
    std::size_t n = for_each_automorphism(
        L,
        [&](const std::vector<Element>& map) {
            if (list.size() < limit) list.push_back(automorphism_json(L, map));
            return true;
        },
        s.autos());
    Json j;
    j["count"] = n;
    j["listed"] = list.size();
    j["automorphisms"] = std::move(list);
    return {j, Holds};
}

inline Outcome product(const std::string& file, const std::string& out_dir) {
    LogicPtr E = share(read_logic(file));
    CompositeLogic C;
    try {
        C = boolean_product(E);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotBoolean) throw;
        return {error_json(e), Refuted};
    }
    Json j = composite_summary_json(C);
    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        const std::string stem = fs::path(file).stem().string();
        const fs::path factor = fs::path(out_dir) / (stem + ".json");
        const fs::path ambient = fs::path(out_dir) / (stem + "_product_ambient.json");
        const fs::path composite = fs::path(out_dir) / (stem + "_product.json");
        std::ofstream(factor) << dump_description(describe(*E));
        std::ofstream(ambient) << dump_description(describe(*C.ambient));
        write_json_file(composite, composite_json(factor.filename().string(), ambient.filename().string(), C));
        j["written"] = composite.string();
    }
    return {j, Holds};
}

// ---------------------------------------------------------------- composite commands

inline CompositeModel load_model(const Settings& s, const std::string& file) {
    LogicCache cache;
    return CompositeModel(read_composite(file, cache), s.states(), s.compat());
}

inline Outcome check_I(const Settings& s, const std::string& file) {
    LogicCache cache;
    CompositeLogic C = read_composite(file, cache);
    auto v = check_condition_I(C, s.compat());
    return {verdict_json(C, v), v.holds ? Holds : Refuted};
}

inline Outcome check_J(const std::string& file) {
    LogicCache cache;
    CompositeLogic C = read_composite(file, cache);
    auto v = check_condition_J(C);
    return {verdict_json(C, v), v.holds ? Holds : Refuted};
}

inline Outcome lemma1(const Settings& s, const std::string& morphism_file, const std::string& e1,
                      const std::string& e2, const std::string& atom) {
    LogicCache cache;
    Morphism T = read_morphism(morphism_file, cache);
    if (!atom.empty()) {
        if (T.source.get() != T.target.get()) throw Error(ErrorKind::InvalidInput, "part (b) needs an automorphism");
        Automorphism A = make_automorphism(T.source, T.map);
        StatePolytope P(T.target, s.states());
        return {lemma_json(*T.target, check_lemma1b(A, P, T.target->element(atom))), Holds};
    }
    if (e1.empty() || e2.empty()) throw Error(ErrorKind::InvalidInput, "lemma1 needs --e1 and --e2, or --atom");
    StatePolytope PE(T.source, s.states());
    StatePolytope PF(T.target, s.states());
    return {lemma_json(T, check_lemma1a(T, PE, PF, T.source->element(e1), T.source->element(e2))), Holds};
}

inline Outcome lemma2(const Settings& s, const std::string& file, const std::vector<std::string>& args, bool all) {
    CompositeModel M = load_model(s, file);
    const FiniteLogic& E = M.factor();
    if (!all) {
        if (args.size() != 4 || std::any_of(args.begin(), args.end(), [](const std::string& a) { return a.empty(); })) {
            throw Error(ErrorKind::InvalidInput, "lemma2 needs --e1 --e2 --f1 --f2, or --all");
        }
        auto r = check_lemma2(M, E.element(args[0]), E.element(args[1]), E.element(args[2]), E.element(args[3]));
        return {lemma_json(M.composite(), r), Holds};
    }
    std::size_t checked = 0;
    const auto& SE = M.factor_states();
    for (Element e1 = 0; e1 < E.size(); ++e1) {
        if (SE.face(e1).empty()) continue;
        for (Element e2 = 0; e2 < E.size(); ++e2) {
            if (!transition_probability(SE, e2, e1).exists) continue;
            for (Element f1 = 0; f1 < E.size(); ++f1) {
                if (SE.face(f1).empty()) continue;
                for (Element f2 = 0; f2 < E.size(); ++f2) {
                    if (!transition_probability(SE, f2, f1).exists) continue;
                    check_lemma2(M, e1, e2, f1, f2);
                    ++checked;
                }
            }
        }
    }
    Json j;
    j["lemma"] = "2";
    j["tuples_checked"] = checked;
    j["holds"] = true;
    return {j, Holds};
}

inline Outcome lemma3(const Settings& s, const std::string& file, const std::string& e, const std::string& f,
                      long vertex, const std::string& state_file, bool all) {
    CompositeModel M = load_model(s, file);
    const FiniteLogic& E = M.factor();
    if (!all) {
        if (e.empty() || f.empty()) throw Error(ErrorKind::InvalidInput, "lemma3 needs --e and --f, or --all-vertices");
        State rho = pick_state(M.ambient_states(), vertex, state_file);
        return {lemma_json(M.composite(), check_lemma3(M, E.element(e), E.element(f), rho)), Holds};
    }
    std::size_t checked = 0;
    for (const State& rho : M.ambient_states().vertices()) {
        for (Element a : atoms(E)) {
            for (Element b : atoms(E)) {
                check_lemma3(M, a, b, rho);
                ++checked;
            }
        }
    }
    Json j;
    j["lemma"] = "3";
    j["cases_checked"] = checked;
    j["holds"] = true;
    return {j, Holds};
}

inline Outcome clone_search_cmd(const Settings& s, const std::string& file, const std::string& C_labels,
                                const std::string& f_label, bool first_only) {
    CompositeModel M = load_model(s, file);
    CloneProblem P(M, detail::resolve(M.factor(), C_labels), M.factor().element(f_label));
    CloneSearchOptions opt;
    opt.automorphisms = s.autos();
    opt.exhaustive = !first_only;
    auto r = clone_search(P, opt);
    if (!r.theorem_consistent || r.criteria_divergences) {
        return {clone_report_json(M.composite(), r), Refuted};
    }
    return {clone_report_json(M.composite(), r), r.cloner ? Holds : Refuted};
}

inline Outcome certify(const Settings& s, const std::string& file, const std::string& C_labels,
                       const std::string& f_label, const std::string& cloner_file) {
    CompositeModel M = load_model(s, file);
    CloneProblem P(M, detail::resolve(M.factor(), C_labels), M.factor().element(f_label));
    std::optional<Automorphism> T;
    if (!cloner_file.empty()) {
        Json j = read_json_file(cloner_file);
        T = automorphism_from_json(M.composite().ambient, j.contains("cloner") ? j["cloner"] : j);
    }
    CloneSearchOptions opt;
    opt.automorphisms = s.autos();
    auto cert = theorem1_certificate(P, T, opt);
    return {certificate_json(M.composite(), cert), Holds};
}

// ---------------------------------------------------------------- hilbert commands

namespace hb = qlogic::hilbert;

/// Operand syntax: "mixed:<d>", "diag:1,1,0", "copier:<d>", "<file>#<name>"
/// (looked up under "matrices" then "vectors"), a file holding a matrix
/// array or {"vector": [...]}, or an inline vector literal.
struct Operand {
    std::optional<hb::Matrix> matrix;
    std::optional<hb::Vector> vector;
};

inline Operand parse_operand(const std::string& text) {
    Operand op;
    auto after = [&](const std::string& prefix) { return text.substr(prefix.size()); };
    if (text.rfind("mixed:", 0) == 0) {
        const int d = std::stoi(after("mixed:"));
        if (d <= 0) throw Error(ErrorKind::InvalidInput, "dimension must be positive");
        op.matrix = hb::DensityOperator::maximally_mixed(d).matrix();
        return op;
    }
    if (text.rfind("diag:", 0) == 0) {
        std::vector<int> pattern;
        for (const auto& item : detail::split_labels(after("diag:"))) pattern.push_back(item == "0" ? 0 : 1);
        op.matrix = hb::ProjectionOperator::diagonal(pattern).matrix();
        return op;
    }
    if (text.rfind("copier:", 0) == 0) {
        op.matrix = hb::basis_copier(std::stoi(after("copier:"))).matrix();
        return op;
    }
    const auto hash = text.find('#');
    if (hash != std::string::npos) {
        Json j = read_json_file(text.substr(0, hash));
        const std::string name = text.substr(hash + 1);
        if (j.contains("matrices") && j["matrices"].contains(name)) {
            op.matrix = hb::matrix_from_json(j["matrices"][name]);
        } else if (j.contains("vectors") && j["vectors"].contains(name)) {
            op.vector = hb::vector_from_json(j["vectors"][name]);
        } else {
            throw Error(ErrorKind::InvalidInput, "no entry '" + name + "' in " + text.substr(0, hash));
        }
        return op;
    }
    if (std::filesystem::is_regular_file(text)) {
        Json j = read_json_file(text);
        if (j.is_object() && j.contains("vector")) op.vector = hb::vector_from_json(j["vector"]);
        else op.matrix = hb::matrix_from_json(j.is_object() ? j.value("matrix", Json()) : j);
        return op;
    }
    op.vector = hb::parse_vector_literal(text);
    return op;
}

inline hb::ProjectionOperator projection_arg(const std::string& text, double tau) {
    Operand op = parse_operand(text);
    if (op.vector) return hb::ProjectionOperator::onto(*op.vector);
    return hb::ProjectionOperator(*op.matrix, tau);
}

inline hb::PureVector vector_arg(const std::string& text) {
    Operand op = parse_operand(text);
    if (!op.vector) throw Error(ErrorKind::InvalidInput, "'" + text + "' is not a vector");
    return hb::PureVector::normalized(*op.vector);
}

inline hb::DensityOperator density_arg(const std::string& text, double tau) {
    Operand op = parse_operand(text);
    if (op.vector) {
        hb::Vector u = *op.vector / op.vector->norm();
        return hb::DensityOperator(u * u.adjoint(), tau);
    }
    return hb::DensityOperator(*op.matrix, tau);
}

inline std::vector<hb::PureVector> vector_list_arg(const std::string& text) {
    std::vector<hb::PureVector> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ';')) out.push_back(vector_arg(item));
    if (out.empty()) throw Error(ErrorKind::InvalidInput, "empty vector list");
    return out;
}

inline Outcome hilbert_witness(const Settings& s, const std::string& a, const std::string& b) {
    auto w = hb::no_cloning_witness(vector_arg(a), vector_arg(b), s.tolerance);
    Json j;
    j["s"] = w.s;
    j["s_squared"] = w.s_squared;
    j["cloneable"] = w.cloneable;
    if (!w.cloneable) j["contradiction"] = Json::array({w.s, w.s_squared});
    j["dimension_two_caveat"] = w.dimension_two;
    return {j, w.cloneable ? Holds : Refuted};
}

inline Outcome hilbert_condprob(const Settings& s, const std::string& a, const std::string& e, const std::string& f) {
    double v = hb::trace_cond_prob(density_arg(a, s.tolerance), projection_arg(e, s.tolerance),
                                   projection_arg(f, s.tolerance), s.tolerance);
    Json j;
    j["value"] = std::clamp(v, 0.0, 1.0);
    j["raw_value"] = v;
    return {j, Holds};
}

inline Outcome hilbert_transition(const Settings& s, const std::string& e, const std::string& f) {
    auto pe = projection_arg(e, s.tolerance);
    auto t = hb::transition_exists(pe, projection_arg(f, s.tolerance), s.tolerance);
    Json j;
    j["exists"] = t.has_value();
    if (t) j["value"] = *t;
    j["dimension_two_caveat"] = pe.dim() == 2;
    return {j, t ? Holds : Refuted};
}

inline Outcome hilbert_atom_transition(const Settings& s, const std::string& xi, const std::string& f) {
    Json j;
    j["value"] = hb::atom_transition(vector_arg(xi), projection_arg(f, s.tolerance));
    return {j, Holds};
}

inline Outcome hilbert_lemma2(const Settings& s, const std::vector<std::string>& args) {
    auto r = hb::lemma2_matrix_check(projection_arg(args[0], s.tolerance), projection_arg(args[1], s.tolerance),
                                     projection_arg(args[2], s.tolerance), projection_arg(args[3], s.tolerance),
                                     s.tolerance);
    Json j;
    j["P(e2|e1)"] = r.se;
    j["P(f2|f1)"] = r.sf;
    j["joint"] = r.joint;
    j["holds"] = true;
    j["dimension_two_caveat"] = r.dimension_two;
    return {j, Holds};
}

inline Outcome hilbert_clone(const Settings& s, const std::string& u, const std::string& C, const std::string& f) {
    Operand op = parse_operand(u);
    if (!op.matrix) throw Error(ErrorKind::InvalidInput, "unitary must be a matrix");
    hb::UnitaryOperator U(*op.matrix, s.tolerance);
    auto vs = vector_list_arg(C);
    const bool ok = hb::test_unitary_cloner(U, vs, vector_arg(f), s.tolerance);
    Json j;
    j["clones"] = ok;
    Json pairs = Json::array();
    for (std::size_t a = 0; a < vs.size(); ++a) {
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
            auto w = hb::no_cloning_witness(vs[a], vs[b], s.tolerance);
            pairs.push_back({{"pair", Json::array({a, b})}, {"s", w.s}, {"cloneable", w.cloneable}});
        }
    }
    j["pairs"] = std::move(pairs);
    return {j, ok ? Holds : Refuted};
}

/// Random cross-checks in dimensions 2..4.
inline Outcome hilbert_sweep(const Settings& s, std::size_t count) {
    std::mt19937_64 rng(s.seed);
    double worst_commuting = 0, worst_atom = 0, worst_lemma2 = 0, worst_additivity = 0;
    for (std::size_t n = 0; n < count; ++n) {
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(n % 3);
        // Commuting triple: diagonal density and projections.
        std::uniform_int_distribution<int> bit(0, 1);
        std::vector<int> pe(static_cast<std::size_t>(d)), pf(static_cast<std::size_t>(d));
        for (auto& x : pe) x = bit(rng);
        for (auto& x : pf) x = bit(rng);
        pe[0] = 1;
        hb::Vector w = hb::random_vector(d, rng).cwiseAbs2().cast<hb::Complex>();
        w /= w.sum();
        hb::DensityOperator a(w.asDiagonal().toDenseMatrix(), s.tolerance);
        auto E = hb::ProjectionOperator::diagonal(pe), F = hb::ProjectionOperator::diagonal(pf);
        double classical_num = 0, classical_den = 0;
        for (Eigen::Index i = 0; i < d; ++i) {
            classical_den += w(i).real() * pe[static_cast<std::size_t>(i)];
            classical_num += w(i).real() * pe[static_cast<std::size_t>(i)] * pf[static_cast<std::size_t>(i)];
        }
        if (classical_den > s.tolerance) {
            worst_commuting = std::max(worst_commuting,
                                       std::abs(hb::trace_cond_prob(a, E, F, s.tolerance) - classical_num / classical_den));
        }
        // Rank-1 transition against the inner product.
        auto xi = hb::random_unit_vector(d, rng);
        auto f = hb::random_projection(d, 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(d)), rng);
        auto t = hb::transition_exists(xi.projection(), f, s.tolerance);
        worst_atom = std::max(worst_atom, t ? std::abs(*t - hb::atom_transition(xi, f)) : 1.0);
        // Product rule for random rank-1 quadruples.
        auto r = hb::lemma2_matrix_check(hb::random_unit_vector(d, rng).projection(),
                                         hb::random_unit_vector(d, rng).projection(),
                                         hb::random_unit_vector(d, rng).projection(),
                                         hb::random_unit_vector(d, rng).projection(), s.tolerance);
        worst_lemma2 = std::max(worst_lemma2, std::abs(r.joint - r.se * r.sf));
        // Conditionalization is additive on a projection and its complement.
        auto rho = hb::random_density(d, rng);
        auto g = hb::random_projection(d, 1, rng);
        auto e = hb::random_projection(d, 1, rng);
        hb::ProjectionOperator g_perp(hb::Matrix::Identity(d, d) - g.matrix());
        double total = hb::trace_cond_prob(rho, e, g, s.tolerance) + hb::trace_cond_prob(rho, e, g_perp, s.tolerance);
        worst_additivity = std::max(worst_additivity, std::abs(total - 1.0));
    }
    const bool ok = worst_commuting <= hb::exact_tolerance && worst_atom <= s.tolerance &&
                    worst_lemma2 <= s.tolerance && worst_additivity <= s.tolerance;
    Json j;
    j["instances"] = count;
    j["seed"] = s.seed;
    j["max_deviation_commuting"] = worst_commuting;
    j["max_deviation_rank1_transition"] = worst_atom;
    j["max_deviation_product_rule"] = worst_lemma2;
    j["max_deviation_additivity"] = worst_additivity;
    j["holds"] = ok;
    return {j, ok ? Holds : Refuted};
}

}  // namespace commands

// ---------------------------------------------------------------- entry point

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conditional probability, morphisms and cloning on finite quantum logics", "qlogic"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings s;
    app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--budget", s.budget, "Node/vertex budget for searches (0: defaults)");
    app.add_option("--seed", s.seed, "Seed for random Hilbert sweeps");
    app.add_option("--tolerance", s.tolerance, "Numeric tolerance for hilbert subcommands");
    app.add_option("--method", s.method, "Vertex enumeration: dd or basis")->check(CLI::IsMember({"dd", "basis"}));

    std::function<Outcome()> action;
    std::string file, file2, set, with, given, target, out_dir, morphism, e1, e2, f1, f2, atom, C, f, cloner, state;
    std::string a_op, e_op, f_op, xi, unitary;
    long vertex = 0;
    std::size_t limit = 24, count = 1000;
    bool all = false, first_only = false;

    auto logic_cmd = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("logic", file, "Logic file")->required();
        return sub;
    };

    logic_cmd("validate", "Check the orthomodular poset axioms")->callback([&] { action = [&] { return commands::validate(file); }; });
    logic_cmd("atoms", "List atoms")->callback([&] { action = [&] { return commands::atoms_cmd(file); }; });
    {
        auto* sub = logic_cmd("compat", "Compatibility of a set, or mutual compatibility of two sets");
        sub->add_option("--set", set, "Comma-separated labels")->required();
        sub->add_option("--with", with, "Second set for mutual compatibility");
        sub->callback([&] { action = [&] { return commands::compat(s, file, set, with); }; });
    }
    logic_cmd("states", "Vertices of the state space")->callback([&] { action = [&] { return commands::states(s, file); }; });
    {
        auto* sub = app.add_subcommand("check", "Check condition F, G or H");
        sub->add_option("condition", file2, "F, G or H")->required();
        sub->add_option("logic", file, "Logic file")->required();
        sub->callback([&] { action = [&] { return commands::check(s, file2, file); }; });
    }
    {
        auto* sub = logic_cmd("condprob", "Conditional state rho(.|e)");
        sub->add_option("--given", given, "Conditioning event")->required();
        sub->add_option("--vertex", vertex, "Use the k-th extreme state");
        sub->add_option("--state", state, "State file (label -> rational string)");
        sub->callback([&] { action = [&] { return commands::condprob(s, file, given, vertex, state); }; });
    }
    {
        auto* sub = logic_cmd("transprob", "Transition probability P(target|given)");
        sub->add_option("--given", given, "Conditioning event")->required();
        sub->add_option("--target", target, "Target event")->required();
        sub->callback([&] { action = [&] { return commands::transprob(s, file, given, target); }; });
    }
    {
        auto* sub = logic_cmd("autos", "Automorphism group");
        sub->add_option("--limit", limit, "Maximum number of automorphisms listed");
        sub->callback([&] { action = [&] { return commands::autos(s, file, limit); }; });
    }
    {
        auto* sub = logic_cmd("product", "Boolean product composite");
        sub->add_option("--out", out_dir, "Directory for the generated files");
        sub->callback([&] { action = [&] { return commands::product(file, out_dir); }; });
    }
    {
        auto* sub = app.add_subcommand("check-I", "Mutual compatibility of the two embedded copies");
        sub->add_option("composite", file, "Composite file")->required();
        sub->callback([&] { action = [&] { return commands::check_I(s, file); }; });
    }
    {
        auto* sub = app.add_subcommand("check-J", "Meets of embedded atoms are atoms");
        sub->add_option("composite", file, "Composite file")->required();
        sub->callback([&] { action = [&] { return commands::check_J(file); }; });
    }
    {
        auto* sub = app.add_subcommand("lemma1", "Transition probabilities along a morphism");
        sub->add_option("--morphism", morphism, "Morphism file")->required();
        sub->add_option("--e1", e1, "Conditioning event");
        sub->add_option("--e2", e2, "Target event");
        sub->add_option("--atom", atom, "Atom for the pulled-back atomic state (automorphisms)");
        sub->callback([&] { action = [&] { return commands::lemma1(s, morphism, e1, e2, atom); }; });
    }
    {
        auto* sub = app.add_subcommand("lemma2", "Product rule for embedded events");
        sub->add_option("composite", file, "Composite file")->required();
        sub->add_option("--e1", e1);
        sub->add_option("--e2", e2);
        sub->add_option("--f1", f1);
        sub->add_option("--f2", f2);
        sub->add_flag("--all", all, "Check every tuple with defined factors");
        sub->callback([&] { action = [&] { return commands::lemma2(s, file, {e1, e2, f1, f2}, all); }; });
    }
    {
        auto* sub = app.add_subcommand("lemma3", "Atomic restrictions versus atomic ambient states");
        sub->add_option("composite", file, "Composite file")->required();
        sub->add_option("--e", e1, "Atom of the factor");
        sub->add_option("--f", f1, "Atom of the factor");
        sub->add_option("--vertex", vertex, "Use the k-th extreme ambient state");
        sub->add_option("--state", state, "Ambient state file");
        sub->add_flag("--all-vertices", all, "Every extreme ambient state and atom pair");
        sub->callback([&] { action = [&] { return commands::lemma3(s, file, e1, f1, vertex, state, all); }; });
    }
    {
        auto* sub = app.add_subcommand("clone-search", "Search the ambient automorphisms for cloners");
        sub->add_option("--composite", file, "Composite file")->required();
        sub->add_option("--C", C, "Atoms to clone")->required();
        sub->add_option("--f", f, "Blank atom")->required();
        sub->add_flag("--first", first_only, "Stop at the first cloner");
        sub->callback([&] { action = [&] { return commands::clone_search_cmd(s, file, C, f, first_only); }; });
    }
    {
        auto* sub = app.add_subcommand("certify-theorem1", "Replay the no-cloning argument for a cloner");
        sub->add_option("--composite", file, "Composite file")->required();
        sub->add_option("--C", C, "Atoms to clone")->required();
        sub->add_option("--f", f, "Blank atom")->required();
        sub->add_option("--cloner", cloner, "Automorphism file (e.g. saved clone-search output)");
        sub->callback([&] { action = [&] { return commands::certify(s, file, C, f, cloner); }; });
    }
    {
        auto* h = app.add_subcommand("hilbert", "Matrix model on C^d and C^d (x) C^d");
        h->require_subcommand(1);
        auto* w = h->add_subcommand("witness", "|<xi1|xi2>|^2 and the cloning contradiction");
        w->add_option("--xi1", e1)->required();
        w->add_option("--xi2", e2)->required();
        w->callback([&] { action = [&] { return commands::hilbert_witness(s, e1, e2); }; });
        auto* c = h->add_subcommand("condprob", "trace(a e f e) / trace(a e)");
        c->add_option("--a", a_op)->required();
        c->add_option("--e", e_op)->required();
        c->add_option("--f", f_op)->required();
        c->callback([&] { action = [&] { return commands::hilbert_condprob(s, a_op, e_op, f_op); }; });
        auto* t = h->add_subcommand("transition", "s with e f e = s e");
        t->add_option("--e", e_op)->required();
        t->add_option("--f", f_op)->required();
        t->callback([&] { action = [&] { return commands::hilbert_transition(s, e_op, f_op); }; });
        auto* at = h->add_subcommand("atom-transition", "<xi|f xi>");
        at->add_option("--xi", xi)->required();
        at->add_option("--f", f_op)->required();
        at->callback([&] { action = [&] { return commands::hilbert_atom_transition(s, xi, f_op); }; });
        auto* l2 = h->add_subcommand("lemma2", "Product rule for tensor products of projections");
        l2->add_option("--e1", e1)->required();
        l2->add_option("--e2", e2)->required();
        l2->add_option("--f1", f1)->required();
        l2->add_option("--f2", f2)->required();
        l2->callback([&] { action = [&] { return commands::hilbert_lemma2(s, {e1, e2, f1, f2}); }; });
        auto* cl = h->add_subcommand("clone", "Test a unitary on H (x) H as a cloner");
        cl->add_option("--unitary", unitary)->required();
        cl->add_option("--C", C, "Semicolon-separated vectors")->required();
        cl->add_option("--f", f)->required();
        cl->callback([&] { action = [&] { return commands::hilbert_clone(s, unitary, C, f); }; });
        auto* sw = h->add_subcommand("sweep", "Random cross-checks in dimensions 2..4");
        sw->add_option("--count", count, "Number of random instances");
        sw->callback([&] { action = [&] { return commands::hilbert_sweep(s, count); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Holds;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Holds;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return InputError;
    }

    Outcome result;
    try {
        result = action();
    } catch (const Error& e) {
        result = {error_json(e), exit_code_for(e.kind())};
    } catch (const std::exception& e) {
        Json j;
        j["error"] = "InvalidInput";
        j["message"] = e.what();
        result = {j, InputError};
    }
    if (s.format == "json") {
        out << result.doc.dump(2) << '\n';
    } else {
        render_human(result.doc, out);
    }
    return result.code;
}

}  // namespace qlogic::cli
