#pragma once

#include "prfair/core.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace prfair {

/// Exact fraction used for agent weights and weighted supports. Every weight the sweep produces
/// is a multiple of 1/k, so 64-bit numerators and denominators are ample.
using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Inverse of to_string.
inline Rational parse_rational(const std::string& text) {
    try {
        std::size_t used  = 0;
        const auto  slash = text.find('/');
        const auto  num   = std::stoll(text.substr(0, slash), &used);
        if (used != text.substr(0, slash).size()) throw std::invalid_argument(text);
        if (slash == std::string::npos) return Rational{num};
        const auto den_text = text.substr(slash + 1);
        const auto den      = std::stoll(den_text, &used);
        if (used != den_text.size() || den == 0) throw std::invalid_argument(text);
        return Rational{num, den};
    } catch (const std::logic_error&) {
        throw InputError("not a rational number: '" + text + "'");
    }
}

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

}  // namespace prfair
