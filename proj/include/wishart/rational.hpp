#pragma once

// Exact arithmetic used throughout the symbolic layers. Coefficients grow like
// (2n)!/(2^n n!), so everything is arbitrary precision.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "wishart/errors.hpp"

namespace wishart {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(const Int& x) { return x.convert_to<double>(); }

// "3", "-5/7"; denominators of 1 are omitted.
inline std::string to_string(const Rat& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

inline Rat parse_rational(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw InputError("not a rational: '" + s + "'");
    }
}

} // namespace wishart
