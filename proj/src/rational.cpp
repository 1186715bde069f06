#include "derand/rational.hpp"

#include <cctype>
#include <limits>

#include "derand/error.hpp"

namespace derand {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  if (!is_integer_text(text)) {
    throw ValidationError("not an integer: \"" + std::string(text) + "\"");
  }
  std::string_view digits = text;
  bool negative = false;
  if (digits[0] == '-' || digits[0] == '+') {
    negative = digits[0] == '-';
    digits.remove_prefix(1);
  }
  const BigInt v{std::string(digits)};
  return negative ? BigInt(-v) : v;
}

std::string format_bigint(const BigInt& v) { return v.str(); }

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den)) {
    throw ValidationError("malformed rational: \"" + std::string(text) + "\"");
  }
  const BigInt d = parse_bigint(den);
  if (d == 0) throw ValidationError("zero denominator in rational \"" + std::string(text) + "\"");
  return Rational(parse_bigint(num), d);
}

std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

BigInt factorial(int n) {
  if (n < 0) throw RangeError("factorial of negative number");
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt mod_floor(const BigInt& v, const BigInt& m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r;
}

std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw RangeError("integer " + v.str() + " does not fit in 64 bits");
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace derand
