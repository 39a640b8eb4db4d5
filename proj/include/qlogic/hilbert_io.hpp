#pragma once

// JSON for complex vectors and matrices: arrays of [re, im] pairs, matrices
// row-major. Also parses inline vector literals such as "1,1" or "1,0.5+2i".

#include "qlogic/errors.hpp"
#include "qlogic/hilbert.hpp"
#include "qlogic/logic_io.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <string_view>

namespace qlogic::hilbert {

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorKind::InvalidInput, "complex entries must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json vector_json(const Vector& v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(complex_json(v(i)));
    return j;
}

inline Vector vector_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw Error(ErrorKind::InvalidInput, "vector must be a non-empty array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

inline Json matrix_json(const Matrix& m) {
    Json j = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) j.push_back(complex_json(m(r, c)));
    }
    return j;
}

/// Flat row-major list of d*d entries.
inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw Error(ErrorKind::InvalidInput, "matrix must be a non-empty array");
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(j.size()))));
    if (static_cast<std::size_t>(d * d) != j.size()) {
        throw Error(ErrorKind::DimensionMismatch, "matrix entry count " + std::to_string(j.size()) + " is not a square");
    }
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) m(r, c) = complex_from_json(j[static_cast<std::size_t>(r * d + c)]);
    }
    return m;
}

/// One component: "a", "bi", "a+bi", "a-bi", "i", "-i".
inline Complex parse_complex(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (ch != ' ') s += ch;
    }
    auto bad = [&] { return Error(ErrorKind::InvalidInput, "cannot parse complex number '" + std::string(text) + "'"); };
    if (s.empty()) throw bad();
    auto number = [&](const std::string& t) -> double {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (used != t.size()) throw bad();
        return v;
    };
    if (s.back() != 'i') return {number(s), 0.0};
    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, number(s)};
    return {number(s.substr(0, split)), number(s.substr(split))};
}

/// Comma-separated components.
inline Vector parse_vector_literal(std::string_view text) {
    std::vector<Complex> parts;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) parts.push_back(parse_complex(item));
    if (parts.empty()) throw Error(ErrorKind::InvalidInput, "empty vector literal");
    Vector v(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parts[i];
    return v;
}

}  // namespace qlogic::hilbert
