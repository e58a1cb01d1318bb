// Exact rational scalars. Every computation in this library is exact; no
// floating point anywhere.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace jammedfan {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Serialized form is "p" for integers and "p/q" otherwise, always reduced,
// q > 0. parse_rat accepts both spellings.
inline std::string format_rat(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("malformed rational: empty string");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q <= 0) throw std::invalid_argument("malformed rational \"" + s + "\": denominator must be positive");
        return Rat(p, q);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational \"" + s + "\"");
    }
}

inline int sign(const Rat& r) { return r.sign(); }

// Floor of a rational, exact.
inline Int rat_floor(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

// Largest integer n with n*n <= v.  v must be nonnegative.
inline Int floor_sqrt(const Int& v) {
    if (v < 0) throw std::invalid_argument("floor_sqrt of negative value");
    return boost::multiprecision::sqrt(v);
}

}  // namespace jammedfan
