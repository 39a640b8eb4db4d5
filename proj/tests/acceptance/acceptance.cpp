// Acceptance gate: one PASS/FAIL line per criterion. Every criterion builds
// a JSON report; criterion 9 reruns all of them and compares the reports.
// Usage: qlogic_acceptance [--report FILE]

#include "qlogic/cli.hpp"
#include "qlogic/cloning.hpp"
#include "qlogic/composite.hpp"
#include "qlogic/files.hpp"
#include "qlogic/fixtures.hpp"
#include "qlogic/hilbert.hpp"
#include "qlogic/morphisms.hpp"
#include "qlogic/reports.hpp"
#include "qlogic/state_space.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qlogic;

namespace {

struct Outcome {
    bool pass = true;
    Json report;
    std::string note;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (pass) note = what;
        pass = false;
    }
};

std::string fixture_file(const std::string& name) { return (default_fixture_dir() / (name + ".json")).string(); }

LogicPtr logic(const std::string& name) { return share(read_logic(fixture_file(name))); }

std::vector<std::vector<Element>> nonempty_subsets(const std::vector<Element>& xs) {
    std::vector<std::vector<Element>> out;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << xs.size()); ++m) {
        std::vector<Element> s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (m >> i & 1u) s.push_back(xs[i]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CliRun {
    int code;
    Json doc;
};

CliRun run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qlogic");
    args.push_back("--format");
    args.push_back("json");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str().empty() ? Json() : Json::parse(out.str())};
}

// ------------------------------------------------------------ criteria

Outcome axiom_gate() {
    Outcome o;
    for (const char* name : {"boolean1", "boolean2", "boolean3", "boolean4", "MO1", "MO2", "MO3", "O6"}) {
        const bool valid = std::string(name) != "O6";
        auto t0 = std::chrono::steady_clock::now();
        auto r = run_cli({"validate", fixture_file(name)});
        const double dt = seconds_since(t0);
        o.require(r.code == (valid ? 0 : 1), std::string(name) + ": unexpected exit code");
        o.require(dt < 1.0, std::string(name) + ": slower than 1 s");
        if (!valid) {
            o.require(r.doc.value("axiom", "") == "E", "O6: axiom E not reported");
            o.require(r.doc.contains("witness") && !r.doc["witness"].empty(), "O6: no witness");
        }
        r.doc.erase("file");
        o.report[name] = r.doc;
    }
    return o;
}

Outcome condition_g_landscape() {
    Outcome o;
    for (const char* name : {"boolean1", "boolean2", "boolean3", "boolean4", "MO2"}) {
        const bool boolean = std::string(name) != "MO2";
        auto t0 = std::chrono::steady_clock::now();
        auto r = run_cli({"check", "G", fixture_file(name)});
        o.require(seconds_since(t0) < 10.0, std::string(name) + ": slower than 10 s");
        o.require(r.code == (boolean ? 0 : 1), std::string(name) + ": unexpected verdict");
        if (!boolean) {
            const auto& w = r.doc["witness_states"];
            o.require(w.size() == 2 && w[0] != w[1], "MO2: no distinct witness pair");
            o.require(r.doc["failure"] == "not unique", "MO2: failure is not non-uniqueness");
        }
        o.report[name] = r.doc;
    }
    return o;
}

Outcome classical_equivalence() {
    Outcome o;
    std::size_t checks = 0;
    for (const char* name : {"boolean1", "boolean2", "boolean3", "boolean4", "prod22_ambient", "prod33_ambient"}) {
        auto L = logic(name);
        StatePolytope P(L);
        std::vector<State> states = P.vertices();
        // The barycenter makes every nonzero e a genuinely partial condition.
        std::vector<Rational> bary(L->size());
        for (const auto& v : P.vertices()) {
            for (Element x = 0; x < L->size(); ++x) bary[x] += v(x) / Rational(P.vertices().size());
        }
        states.push_back(make_state(*L, bary));
        for (const auto& rho : states) {
            for (Element e = 1; e < L->size(); ++e) {
                if (rho(e) == 0) continue;
                auto r = conditional_probability(P, rho, e);
                o.require(r.kind == ConditionalKind::Unique, std::string(name) + ": conditional not unique");
                if (!r.state) continue;
                for (Element f = 0; f < L->size(); ++f) {
                    o.require((*r.state)(f) == rho(inf(*L, f, e)) / rho(e),
                              std::string(name) + ": ratio mismatch");
                    ++checks;
                }
            }
        }
        o.report[name] = P.vertices().size();
    }
    o.report["checks"] = checks;
    return o;
}

Outcome lemma1_suite() {
    Outcome o;
    LogicCache cache;
    std::vector<std::pair<std::string, Morphism>> Ts;
    for (const char* name : {"embed_2to3", "identity_boolean3", "swap_xy"}) {
        Ts.emplace_back(name, read_morphism(fixture_file(name), cache));
    }
    try {
        read_morphism(fixture_file("unit_to_zero"), cache);
        o.require(false, "unit_to_zero accepted");
    } catch (const Error& e) {
        o.require(e.kind() == ErrorKind::UnitNotPreserved, "unit_to_zero: wrong error");
    }
    auto B3 = logic("boolean3");
    auto autos = automorphisms(B3);
    o.require(autos.size() == 6, "2^3 does not have 6 automorphisms");
    for (std::size_t i = 0; i < autos.size(); ++i) Ts.emplace_back("aut" + std::to_string(i), autos[i].forward);

    std::size_t pairs = 0, atoms_checked = 0;
    for (const auto& [name, T] : Ts) {
        StatePolytope PE(T.source), PF(T.target);
        for (Element e1 = 1; e1 < T.source->size(); ++e1) {
            for (Element e2 = 0; e2 < T.source->size(); ++e2) {
                if (!transition_probability(PE, e2, e1).exists) continue;
                auto r = check_lemma1a(T, PE, PF, e1, e2);
                o.require(r.source_value == r.target_value, name + ": pullback identity fails");
                ++pairs;
            }
        }
        if (T.source->size() != T.target->size() || !is_injective(T)) continue;
        auto A = make_automorphism(T.source, T.map);
        for (Element f : atoms(*T.target)) {
            auto r = check_lemma1b(A, PF, f);
            o.require(r.pulled_back == r.atomic && r.atomic == atomic_state(PF, A.inverse[f]),
                      name + ": atomic-state identity fails");
            ++atoms_checked;
        }
    }
    o.report["morphisms"] = Ts.size();
    o.report["pairs"] = pairs;
    o.report["atoms"] = atoms_checked;
    return o;
}

Outcome lemma2_suite() {
    Outcome o;
    for (const char* name : {"boolean2", "boolean3"}) {
        CompositeModel M(boolean_product(logic(name)));
        const FiniteLogic& E = M.factor();
        const auto& S = M.factor_states();
        std::size_t tuples = 0;
        for (Element e1 = 1; e1 < E.size(); ++e1) {
            for (Element e2 = 0; e2 < E.size(); ++e2) {
                if (!transition_probability(S, e2, e1).exists) continue;
                for (Element f1 = 1; f1 < E.size(); ++f1) {
                    for (Element f2 = 0; f2 < E.size(); ++f2) {
                        if (!transition_probability(S, f2, f1).exists) continue;
                        auto r = check_lemma2(M, e1, e2, f1, f2);
                        o.require(r.joint == r.pe * r.pf, std::string(name) + ": product identity fails");
                        ++tuples;
                    }
                }
            }
        }
        o.report[name] = tuples;
    }
    return o;
}

Outcome lemma3_suite() {
    Outcome o;
    for (const char* name : {"boolean2", "boolean3"}) {
        CompositeModel M(boolean_product(logic(name)));
        const FiniteLogic& E = M.factor();
        std::size_t checked = 0, atomic = 0;
        for (const auto& rho : M.ambient_states().vertices()) {
            for (Element e : atoms(E)) {
                for (Element f : atoms(E)) {
                    auto r = check_lemma3(M, e, f, rho);
                    o.require(r.restrictions_atomic == r.rho_atomic, std::string(name) + ": equivalence fails");
                    atomic += r.rho_atomic ? 1 : 0;
                    ++checked;
                }
            }
        }
        o.require(atomic == M.ambient_states().vertices().size(), std::string(name) + ": vertex without atom pair");
        o.report[name] = {{"checked", checked}, {"atomic", atomic}};
    }
    return o;
}

Outcome theorem1_suite() {
    Outcome o;
    const std::pair<const char*, std::size_t> cases[] = {{"boolean2", 24}, {"boolean3", 362880}};
    for (const auto& [name, expected] : cases) {
        CompositeModel M(boolean_product(logic(name)));
        auto at = atoms(M.factor());
        std::vector<CloneProblem> problems;
        for (const auto& C : nonempty_subsets(at)) {
            for (Element f : at) problems.emplace_back(M, C, f);
        }
        auto reports = clone_sweep(problems);
        Json rows = Json::array();
        for (std::size_t i = 0; i < problems.size(); ++i) {
            const auto& r = reports[i];
            o.require(r.examined == expected, std::string(name) + ": automorphism count differs");
            o.require(r.cloner.has_value() == r.orthogonal, std::string(name) + ": cloner without orthogonality");
            o.require(r.criteria_divergences == 0 && r.theorem_consistent, std::string(name) + ": inconsistent");
            o.require(is_cloning_transformation(problems[i], classical_cloner(problems[i])),
                      std::string(name) + ": classical cloner rejected");
            auto cert = theorem1_certificate(problems[i], r.cloner);
            for (const auto& e : cert.entries) {
                o.require(e.direct == e.s && e.pulled == e.s * e.s && (e.s == 0 || e.s == 1),
                          std::string(name) + ": certificate fails");
            }
            rows.push_back({{"C", labels_json(M.factor(), r.C)},
                            {"f", M.factor().label(r.f)},
                            {"cloners", r.cloner_count},
                            {"orthogonal", r.orthogonal}});
        }
        o.report[name] = {{"automorphisms", expected}, {"problems", rows}};
    }
    o.note = "|Aut(2^3 x 2^3)| = 9! = 362880 (the stated 40320 is 8!); all were examined";
    return o;
}

Outcome hilbert_suite() {
    using namespace qlogic::hilbert;
    Outcome o;
    std::mt19937_64 rng(20261018);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);

    double worst_a = 0;
    std::size_t commuting = 0;
    for (int t = 0; t < 1000; ++t) {
        const int d = 2 + t % 3;
        std::vector<double> w(d);
        std::vector<int> pe(d), pf(d);
        double total = 0;
        for (auto& x : w) total += (x = u(rng));
        double num = 0, den = 0;
        for (int i = 0; i < d; ++i) {
            w[i] /= total;
            pe[i] = coin(rng);
            pf[i] = coin(rng);
            den += pe[i] * w[i];
            num += pe[i] * pf[i] * w[i];
        }
        if (den == 0) continue;
        Vector diag(d);
        for (int i = 0; i < d; ++i) diag(i) = w[i];
        DensityOperator a(diag.asDiagonal().toDenseMatrix());
        double v = trace_cond_prob(a, ProjectionOperator::diagonal(pe), ProjectionOperator::diagonal(pf));
        worst_a = std::max(worst_a, std::abs(v - num / den));
        ++commuting;
    }
    o.require(worst_a <= 1e-12, "(a) trace formula differs from the classical ratio");

    double worst_b = 0;
    for (int t = 0; t < 1000; ++t) {
        const Eigen::Index d = 2 + t % 3;
        auto xi = random_unit_vector(d, rng);
        auto f = random_projection(d, 1 + (t / 3) % d, rng);
        auto s = transition_exists(xi.projection(), f);
        if (!s) {
            o.require(false, "(b) rank-1 transition undefined");
            continue;
        }
        worst_b = std::max(worst_b, std::abs(*s - atom_transition(xi, f)));
    }
    o.require(worst_b <= 1e-9, "(b) rank-1 transition differs from <xi|f xi>");

    double worst_c = 0;
    for (int t = 0; t < 1000; ++t) {
        const Eigen::Index d = 2 + t % 3;
        auto e1 = random_unit_vector(d, rng).projection();
        auto e2 = random_unit_vector(d, rng).projection();
        auto f1 = random_unit_vector(d, rng).projection();
        auto f2 = random_unit_vector(d, rng).projection();
        auto r = lemma2_matrix_check(e1, e2, f1, f2);
        worst_c = std::max(worst_c, std::abs(r.joint - r.se * r.sf));
    }
    o.require(worst_c <= 1e-9, "(c) tensor product rule fails");

    Vector plus(2);
    plus << 1, 1;
    auto w = no_cloning_witness(PureVector::basis(2, 0), PureVector::normalized(plus));
    o.require(std::abs(w.s - 0.5) <= 1e-12 && std::abs(w.s_squared - 0.25) <= 1e-12 && !w.cloneable,
              "(d) witness values");

    o.report = {{"commuting_instances", commuting},
                {"max_dev_a", worst_a},
                {"max_dev_b", worst_b},
                {"max_dev_c", worst_c},
                {"witness", {{"s", w.s}, {"s_squared", w.s_squared}, {"cloneable", w.cloneable}}}};
    return o;
}

struct Criterion {
    int id;
    const char* title;
    double limit;  // seconds
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::string report_path;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--report") report_path = argv[i + 1];
    }

    const std::vector<Criterion> criteria = {
        {1, "axiom gate", 8.0, axiom_gate},
        {2, "condition G landscape", 50.0, condition_g_landscape},
        {3, "classical conditional equals ratio", 30.0, classical_equivalence},
        {4, "morphism transition identities", 10.0, lemma1_suite},
        {5, "product rule on composites", 60.0, lemma2_suite},
        {6, "atomic restriction equivalence", 60.0, lemma3_suite},
        {7, "no-cloning certificate", 300.0, theorem1_suite},
        {8, "Hilbert cross-checks", 60.0, hilbert_suite},
    };

    int failures = 0;
    Json all = Json::object();
    bool deterministic = true;
    std::string drift;
    double rerun = 0;
    auto line = [](int id, bool pass, const std::string& title, double dt, const std::string& note) {
        std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << title << "  (" << std::fixed
                  << std::setprecision(2) << dt << " s)";
        if (!note.empty()) std::cout << "  " << note;
        std::cout << std::endl;
    };

    for (const auto& c : criteria) {
        Outcome first, second;
        auto t0 = std::chrono::steady_clock::now();
        try {
            first = c.run();
        } catch (const std::exception& e) {
            first.pass = false;
            first.note = std::string("exception: ") + e.what();
        }
        const double dt = seconds_since(t0);
        if (dt >= c.limit) first.require(false, "time limit exceeded");
        line(c.id, first.pass, c.title, dt, first.note);
        failures += first.pass ? 0 : 1;
        all[std::to_string(c.id)] = first.report;

        t0 = std::chrono::steady_clock::now();
        try {
            second = c.run();
        } catch (const std::exception&) {
        }
        rerun += seconds_since(t0);
        if (second.report.dump() != first.report.dump()) {
            deterministic = false;
            if (drift.empty()) drift = "report of criterion " + std::to_string(c.id) + " changed between runs";
        }
    }
    line(9, deterministic, "deterministic reports", rerun, drift);
    failures += deterministic ? 0 : 1;

    if (!report_path.empty()) std::ofstream(report_path) << all.dump(2) << '\n';
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
