#pragma once

// Catalog of the bundled fixtures. Every entry in manifest.json carries
// expected properties; loading an entry recomputes them and refuses to
// return data whose annotations no longer match.

#include "qlogic/errors.hpp"
#include "qlogic/files.hpp"
#include "qlogic/logic_io.hpp"
#include "qlogic/morphisms.hpp"
#include "qlogic/state_space.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qlogic {

inline std::filesystem::path default_fixture_dir() {
#ifdef QLOGIC_FIXTURE_DIR
    return QLOGIC_FIXTURE_DIR;
#else
    return "fixtures";
#endif
}

enum class FixtureKind { Logic, Composite, Morphism, Hilbert };

struct Fixture {
    std::string name;
    FixtureKind kind;
    std::filesystem::path path;
    Json annotations;
};

class FixtureCatalog {
public:
    explicit FixtureCatalog(std::filesystem::path dir = default_fixture_dir())
        : dir_(std::move(dir)), manifest_(read_json_file(dir_ / "manifest.json")) {}

    const std::filesystem::path& directory() const { return dir_; }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const char* section : {"logics", "composites", "morphisms", "hilbert"}) {
            if (!manifest_.contains(section)) continue;
            for (auto it = manifest_[section].begin(); it != manifest_[section].end(); ++it) out.push_back(it.key());
        }
        return out;
    }

    Fixture entry(const std::string& name) const {
        static const std::pair<const char*, FixtureKind> sections[] = {{"logics", FixtureKind::Logic},
                                                                      {"composites", FixtureKind::Composite},
                                                                      {"morphisms", FixtureKind::Morphism},
                                                                      {"hilbert", FixtureKind::Hilbert}};
        for (const auto& [section, kind] : sections) {
            if (manifest_.contains(section) && manifest_[section].contains(name)) {
                Json a = manifest_[section][name];
                std::filesystem::path p = dir_ / a.at("file").get<std::string>();
                a.erase("file");
                return {name, kind, p, a};
            }
        }
        throw Error(ErrorKind::UnknownFixture, "no fixture named '" + name + "'");
    }

    /// Recomputes the annotations of an entry from its data files.
    Json annotate(const std::string& name) const {
        Fixture fx = entry(name);
        switch (fx.kind) {
            case FixtureKind::Logic: return annotate_logic(read_description(fx.path));
            case FixtureKind::Composite: return annotate_composite(fx.path);
            case FixtureKind::Morphism: return annotate_morphism(fx.path);
            case FixtureKind::Hilbert: return annotate_hilbert(fx.path);
        }
        return {};
    }

    /// Throws CheckFailed naming the first annotation that differs.
    void verify(const std::string& name) const {
        Fixture fx = entry(name);
        Json fresh = annotate(name);
        for (auto it = fx.annotations.begin(); it != fx.annotations.end(); ++it) {
            if (!fresh.contains(it.key()) || fresh[it.key()] != it.value()) {
                throw Error(ErrorKind::CheckFailed, "fixture '" + name + "': annotation '" + it.key() + "' is " +
                                                        it.value().dump() + ", recomputed " +
                                                        (fresh.contains(it.key()) ? fresh[it.key()].dump() : "nothing"));
            }
        }
    }

    LogicDescription load_logic(const std::string& name) const {
        Fixture fx = expect(name, FixtureKind::Logic);
        verify(name);
        return read_description(fx.path);
    }

    CompositeLogic load_composite(const std::string& name) const {
        Fixture fx = expect(name, FixtureKind::Composite);
        verify(name);
        LogicCache cache;
        return read_composite(fx.path, cache);
    }

    Morphism load_morphism(const std::string& name) const {
        Fixture fx = expect(name, FixtureKind::Morphism);
        verify(name);
        LogicCache cache;
        return read_morphism(fx.path, cache);
    }

    Json load_hilbert(const std::string& name) const {
        Fixture fx = expect(name, FixtureKind::Hilbert);
        verify(name);
        return read_json_file(fx.path);
    }

private:
    Fixture expect(const std::string& name, FixtureKind kind) const {
        Fixture fx = entry(name);
        if (fx.kind != kind) throw Error(ErrorKind::UnknownFixture, "fixture '" + name + "' has a different kind");
        return fx;
    }

    static Json annotate_logic(const LogicDescription& d) {
        Json a;
        std::optional<FiniteLogic> checked;
        try {
            checked.emplace(validate_logic(d));
        } catch (const Error& err) {
            a["valid"] = false;
            if (err.kind() == ErrorKind::AxiomViolation) a["axiom"] = std::string(1, err.axiom());
            else a["error"] = to_string(err.kind());
            return a;
        }
        const FiniteLogic& L = *checked;
        StatePolytope P(L);
        a["valid"] = true;
        a["elements"] = L.size();
        a["atoms"] = atoms(L).size();
        a["state_vertices"] = P.vertices().size();
        a["F"] = check_condition_F(P).holds;
        a["G"] = check_condition_G(P).holds;
        a["H"] = check_condition_H(P).holds;
        a["automorphisms"] = automorphism_count(L);
        return a;
    }

    static Json annotate_composite(const std::filesystem::path& p) {
        LogicCache cache;
        CompositeLogic C = read_composite(p, cache);
        Json a;
        a["I"] = check_condition_I(C).holds;
        a["J"] = check_condition_J(C).holds;
        return a;
    }

    static Json annotate_morphism(const std::filesystem::path& p) {
        LogicCache cache;
        Json a;
        try {
            Morphism T = read_morphism(p, cache);
            a["valid"] = true;
            a["injective"] = is_injective(T);
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::InvalidInput) throw;
            a["valid"] = false;
            a["error"] = to_string(err.kind());
        }
        return a;
    }

    static Json annotate_hilbert(const std::filesystem::path& p) {
        Json j = read_json_file(p);
        Json a;
        for (const char* section : {"vectors", "matrices"}) {
            std::vector<std::string> keys;
            if (j.contains(section)) {
                for (auto it = j[section].begin(); it != j[section].end(); ++it) keys.push_back(it.key());
            }
            std::sort(keys.begin(), keys.end());
            a[section] = keys;
        }
        return a;
    }

    std::filesystem::path dir_;
    Json manifest_;
};

/// Convenience wrapper over the default catalog.
inline LogicDescription load_fixture(const std::string& name) { return FixtureCatalog().load_logic(name); }

}  // namespace qlogic
