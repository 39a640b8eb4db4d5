#pragma once

// Logic interchange files: {"labels", "le", "ortho", "zero", "one"}.

#include "qlogic/errors.hpp"
#include "qlogic/logic.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace qlogic {

using Json = nlohmann::ordered_json;

inline Json to_json(const LogicDescription& d) {
    Json j;
    j["labels"] = d.labels;
    Json le = Json::array();
    for (auto [a, b] : d.le_pairs) le.push_back(Json::array({a, b}));
    j["le"] = std::move(le);
    j["ortho"] = d.ortho;
    j["zero"] = d.zero_index;
    j["one"] = d.one_index;
    return j;
}

inline LogicDescription description_from_json(const Json& j) {
    try {
        LogicDescription d;
        d.labels = j.at("labels").get<std::vector<std::string>>();
        for (const auto& p : j.at("le")) {
            if (!p.is_array() || p.size() != 2) {
                throw Error(ErrorKind::InvalidInput, "\"le\" entries must be [i, j] pairs");
            }
            d.le_pairs.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
        }
        d.ortho = j.at("ortho").get<std::vector<std::size_t>>();
        d.zero_index = j.at("zero").get<std::size_t>();
        d.one_index = j.at("one").get<std::size_t>();
        return d;
    } catch (const Json::exception& ex) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed logic description: ") + ex.what());
    }
}

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& ex) {
        throw Error(ErrorKind::InvalidInput, "'" + path.string() + "': " + ex.what());
    }
}

inline void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

inline LogicDescription read_description(const std::filesystem::path& path) {
    return description_from_json(read_json_file(path));
}

inline FiniteLogic read_logic(const std::filesystem::path& path, const LogicConfig& cfg = {}) {
    return validate_logic(read_description(path), cfg);
}

/// Compact single-line-per-key rendering used for the fixture files.
inline std::string dump_description(const LogicDescription& d) {
    std::ostringstream os;
    Json j = to_json(d);
    os << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << "  \"" << it.key() << "\": " << it.value().dump();
    }
    os << "\n}\n";
    return os.str();
}

}  // namespace qlogic
