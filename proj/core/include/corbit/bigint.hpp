#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace corbit {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Natural log of a positive big integer, safe for values far beyond
// double range: take the top 64 bits as a mantissa and add back the
// shifted-out bit count times ln 2.
inline double log_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log_big: argument must be positive");
    const std::size_t bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 63) return std::log(static_cast<double>(v.convert_to<long long>()));
    const std::size_t shift = bits - 63;
    const BigInt top = v >> shift;
    return std::log(static_cast<double>(top.convert_to<long long>())) +
           static_cast<double>(shift) * 0.69314718055994530941723212145818;
}

inline double log_rat(const Rat& v) {
    return log_big(boost::multiprecision::numerator(v)) -
           log_big(boost::multiprecision::denominator(v));
}

// Rounded double value of a rational whose magnitude may only be
// representable via logs; callers that can overflow should use log_rat.
inline double rat_to_double(const Rat& v) {
    if (v == 0) return 0.0;
    if (v < 0) throw std::domain_error("rat_to_double: negative values unused here");
    return std::exp(log_rat(v));
}

inline std::string dec_string(const BigInt& v) { return v.str(); }

// Parses "p/q" or a plain integer into an exact rational.
inline Rat parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt p(s.substr(0, slash));
        BigInt q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rat(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: cannot parse '" + s + "'");
    }
}

}  // namespace corbit
