#include "support.hpp"

#include "qlogic/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qlogic;
using namespace qtest;

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run qlogic_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qlogic");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return fixture_path(name + ".json").string(); }

fs::path scratch(const std::string& file) {
    fs::path dir = fs::temp_directory_path() / "qlogic_cli_test";
    fs::create_directories(dir);
    return dir / file;
}

void write(const fs::path& p, const Json& j) {
    std::ofstream(p) << j.dump(2);
}

}  // namespace

TEST(Cli, ValidateReportsTheFailingAxiom) {
    auto r = qlogic_cli({"validate", fx("O6"), "--format", "json"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.json()["axiom"], "E");
    EXPECT_EQ(qlogic_cli({"validate", fx("boolean3")}).code, 0);
}

TEST(Cli, ConditionG) {
    auto r = qlogic_cli({"--format", "json", "check", "G", fx("MO2")});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.json()["e"], "a");
    EXPECT_EQ(r.json()["witness_states"].size(), 2u);
    EXPECT_EQ(qlogic_cli({"check", "G", fx("boolean3")}).code, 0);
    EXPECT_EQ(qlogic_cli({"check", "F", fx("grid3x3")}).code, 1);
}

TEST(Cli, CloneSearch) {
    auto r = qlogic_cli({"clone-search", "--composite", fx("prod22"), "--C", "e1,e2", "--f", "e1", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    auto j = r.json();
    EXPECT_TRUE(j["cloner_found"].get<bool>());
    EXPECT_EQ(j["automorphisms_examined"], 24);
    EXPECT_TRUE(j["theorem_consistent"].get<bool>());
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(qlogic_cli({"clone-search", "--composite", fx("prod22"), "--C", "zz", "--f", "e1"}).code, 2);
    EXPECT_EQ(qlogic_cli({"validate", fx("missing")}).code, 2);
    EXPECT_EQ(qlogic_cli({"validate"}).code, 2);
    EXPECT_EQ(qlogic_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(qlogic_cli({"clone-search", "--composite", fx("prod33"), "--C", "x,y", "--f", "x", "--budget", "5"}).code,
              3);
    auto bad = qlogic_cli({"check", "Q", fx("boolean2")});
    EXPECT_EQ(bad.code, 2);
}

TEST(Cli, HelpSucceeds) {
    auto r = qlogic_cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("clone-search"), std::string::npos);
}

TEST(Cli, StateFileRoundTrip) {
    auto r = qlogic_cli({"condprob", fx("boolean3"), "--given", "{x,y}", "--vertex", "1", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    auto cond = r.json()["conditional_state"];
    auto p = scratch("state.json");
    write(p, cond);
    auto again = qlogic_cli({"condprob", fx("boolean3"), "--given", "{x,y}", "--state", p.string(), "--format", "json"});
    ASSERT_EQ(again.code, 0) << again.out;
    EXPECT_EQ(again.json()["base_state"], cond);
    EXPECT_EQ(again.json()["conditional_state"], cond);

    auto L = fixture("boolean3");
    State s = state_from_json(*L, cond);
    write(p, state_file_json(fx("boolean3"), s));
    auto by_values = qlogic_cli({"condprob", fx("boolean3"), "--given", "1", "--state", p.string(), "--format", "json"});
    ASSERT_EQ(by_values.code, 0) << by_values.out;
    EXPECT_EQ(by_values.json()["base_state"], cond);
}

TEST(Cli, AutomorphismsRoundTrip) {
    auto r = qlogic_cli({"autos", fx("boolean3"), "--format", "json"});
    ASSERT_EQ(r.code, 0);
    auto j = r.json();
    EXPECT_EQ(j["count"], 6);
    auto L = fixture("boolean3");
    std::set<std::vector<Element>> seen;
    for (const auto& a : j["automorphisms"]) {
        auto map = a["map"].get<std::vector<Element>>();
        auto T = make_automorphism(L, map);
        EXPECT_EQ(T.forward.map, map);
        seen.insert(map);
    }
    EXPECT_EQ(seen.size(), 6u);
}

TEST(Cli, CertificateFromSavedSearch) {
    auto r = qlogic_cli({"clone-search", "--composite", fx("prod22"), "--C", "e1,e2", "--f", "e1", "--first", "--format",
                         "json"});
    ASSERT_EQ(r.code, 0);
    auto p = scratch("search.json");
    std::ofstream(p) << r.out;
    auto cert = qlogic_cli({"certify-theorem1", "--composite", fx("prod22"), "--C", "e1,e2", "--f", "e1", "--cloner",
                            p.string(), "--format", "json"});
    ASSERT_EQ(cert.code, 0) << cert.out;
    auto pairs = cert.json()["pairs"];
    EXPECT_EQ(pairs.size(), 4u);
    for (const auto& e : pairs) EXPECT_EQ(e["direct"], e["pulled_back"]);
    // A cloner for one problem is rejected for another.
    auto other = qlogic_cli({"certify-theorem1", "--composite", fx("prod22"), "--C", "e2", "--f", "e2", "--cloner",
                             p.string()});
    EXPECT_NE(other.code, 0);
}

TEST(Cli, LemmaSubcommands) {
    EXPECT_EQ(qlogic_cli({"lemma2", fx("prod22"), "--all"}).code, 0);
    EXPECT_EQ(qlogic_cli({"lemma3", fx("prod22"), "--all-vertices"}).code, 0);
    EXPECT_EQ(qlogic_cli({"lemma2", fx("prod33"), "--e1", "x", "--e2", "x", "--f1", "y", "--f2", "z"}).code, 0);
    EXPECT_EQ(qlogic_cli({"lemma1", "--morphism", fx("swap_xy"), "--atom", "x"}).code, 0);
    EXPECT_EQ(qlogic_cli({"lemma1", "--morphism", fx("unit_to_zero"), "--atom", "x"}).code, 2);
    EXPECT_EQ(qlogic_cli({"check-I", fx("prod33")}).code, 0);
    EXPECT_EQ(qlogic_cli({"check-J", fx("prod33")}).code, 0);
}

TEST(Cli, Hilbert) {
    auto w = qlogic_cli({"hilbert", "witness", "--xi1", "1,0", "--xi2", "1,1", "--format", "json"});
    EXPECT_NEAR(w.json()["s"].get<double>(), 0.5, 1e-12);
    EXPECT_FALSE(w.json()["cloneable"].get<bool>());
    EXPECT_EQ(qlogic_cli({"hilbert", "witness", "--xi1", "1,0", "--xi2", "0,1"}).code, 0);
    auto s = qlogic_cli({"--seed", "9", "hilbert", "sweep", "--count", "200", "--format", "json"});
    EXPECT_EQ(s.code, 0);
    EXPECT_TRUE(s.json()["holds"].get<bool>());
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::vector<std::string>> commands = {
        {"clone-search", "--composite", fx("prod22"), "--C", "e1,e2", "--f", "e1", "--format", "json"},
        {"check", "G", fx("MO3"), "--format", "json"},
        {"condprob", fx("MO2"), "--given", "a", "--vertex", "2"},
        {"--seed", "4", "hilbert", "sweep", "--count", "50", "--format", "json"},
    };
    for (const auto& c : commands) {
        auto a = qlogic_cli(c);
        auto b = qlogic_cli(c);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out);
        EXPECT_FALSE(a.out.empty());
    }
}
