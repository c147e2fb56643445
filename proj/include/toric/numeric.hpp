#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace toric {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline std::string to_string(const Integer& v) { return v.str(); }

/// Exact text form: `a/b` with b > 1, or `a` for integers.
inline std::string to_string(const Rational& v) {
    const Integer num = boost::multiprecision::numerator(v);
    const Integer den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

inline Integer parse_integer(std::string_view s) {
    if (!is_integer_literal(s))
        throw DomainError("not an integer: '" + std::string(s) + "'");
    std::string buf(s);
    if (buf[0] == '+') buf.erase(0, 1);
    return Integer(buf);
}

/// Accepts `a`, `a/b`; rejects zero denominators.
inline Rational parse_rational(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s));
    const Integer num = parse_integer(s.substr(0, slash));
    const Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
}

/// Exact value of a finite double.
inline Rational rational_from_double(double x) {
    if (x == 0.0) return Rational(0);
    int exp = 0;
    const double mant = std::frexp(x, &exp);
    // 53 bits of mantissa as an integer.
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    Rational r{Integer(scaled)};
    const int shift = exp - 53;
    if (shift > 0) r *= Rational(Integer(1) << shift);
    else if (shift < 0) r /= Rational(Integer(1) << -shift);
    return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace toric
