#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace derand {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Parses "num/den" or a bare integer "num". Throws ValidationError on
/// malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Always "num/den" in lowest terms, e.g. "3/1", "-1/2".
std::string format_rational(const Rational& r);

BigInt parse_bigint(std::string_view text);
std::string format_bigint(const BigInt& v);

BigInt factorial(int n);

/// Non-negative residue of v mod m (m > 0).
BigInt mod_floor(const BigInt& v, const BigInt& m);

/// Narrowing conversion; throws RangeError when v does not fit.
std::int64_t to_int64(const BigInt& v);

}  // namespace derand
