#pragma once

// Morphism and composite files. Paths inside them are resolved relative to
// the file that names them.
//   morphism:  {"source": path, "target": path, "map": [...]}
//   composite: {"factor": path, "ambient": path, "pi1": [...], "pi2": [...]}

#include "qlogic/composite.hpp"
#include "qlogic/logic_io.hpp"
#include "qlogic/morphisms.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace qlogic {

/// Loads each referenced logic file once.
class LogicCache {
public:
    explicit LogicCache(LogicConfig cfg = {}) : cfg_(cfg) {}

    LogicPtr get(const std::filesystem::path& path) {
        const std::string key = std::filesystem::weakly_canonical(path).string();
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        LogicPtr L = share(read_logic(path, cfg_));
        cache_.emplace(key, L);
        return L;
    }

private:
    LogicConfig cfg_;
    std::map<std::string, LogicPtr> cache_;
};

namespace detail {

inline std::filesystem::path sibling(const std::filesystem::path& file, const Json& name) {
    if (!name.is_string()) throw Error(ErrorKind::InvalidInput, "path entries must be strings");
    std::filesystem::path p = name.get<std::string>();
    return p.is_absolute() ? p : file.parent_path() / p;
}

inline std::vector<Element> index_array(const Json& j, const char* key) {
    try {
        return j.at(key).get<std::vector<Element>>();
    } catch (const Json::exception& ex) {
        throw Error(ErrorKind::InvalidInput, std::string("\"") + key + "\": " + ex.what());
    }
}

/// Map arrays in files use the raw indices of the referenced logic files.
inline std::vector<Element> canonical_map(const FiniteLogic& E, const FiniteLogic& F, const std::vector<Element>& raw) {
    if (raw.size() != E.size()) {
        throw Error(ErrorKind::InvalidInput, "map has " + std::to_string(raw.size()) + " entries, source has " +
                                                 std::to_string(E.size()));
    }
    std::vector<Element> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] >= F.size()) throw Error(ErrorKind::InvalidInput, "map entry out of range", {i});
        out[E.from_raw(i)] = F.from_raw(raw[i]);
    }
    return out;
}

inline const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing \"") + key + "\"");
    return j.at(key);
}

}  // namespace detail

inline Morphism read_morphism(const std::filesystem::path& path, LogicCache& cache) {
    Json j = read_json_file(path);
    LogicPtr E = cache.get(detail::sibling(path, detail::member(j, "source")));
    LogicPtr F = cache.get(detail::sibling(path, detail::member(j, "target")));
    return validate_morphism(E, F, detail::canonical_map(*E, *F, detail::index_array(j, "map")));
}

inline CompositeLogic read_composite(const std::filesystem::path& path, LogicCache& cache) {
    Json j = read_json_file(path);
    LogicPtr E = cache.get(detail::sibling(path, detail::member(j, "factor")));
    LogicPtr L = cache.get(detail::sibling(path, detail::member(j, "ambient")));
    return make_composite(E, L, detail::canonical_map(*E, *L, detail::index_array(j, "pi1")),
                          detail::canonical_map(*E, *L, detail::index_array(j, "pi2")));
}

inline Json composite_json(const std::string& factor_path, const std::string& ambient_path, const CompositeLogic& C) {
    Json j;
    j["factor"] = factor_path;
    j["ambient"] = ambient_path;
    j["pi1"] = C.pi1.map;
    j["pi2"] = C.pi2.map;
    return j;
}

}  // namespace qlogic
