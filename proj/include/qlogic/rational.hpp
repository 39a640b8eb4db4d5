#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qlogic {

using Rational = boost::multiprecision::mpq_rational;

/// Formats as "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1) {
        return boost::multiprecision::numerator(r).str();
    }
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            return Rational(boost::multiprecision::mpz_int(s));
        }
        boost::multiprecision::mpz_int num(s.substr(0, slash));
        boost::multiprecision::mpz_int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

}  // namespace qlogic
