#include "folnerlab/rational.hpp"

#include <cstdio>

#include "folnerlab/error.hpp"

namespace folnerlab {

double to_double(const BigInt& n) { return n.convert_to<double>(); }

double to_double(const Rational& q) {
  return to_double(q.numerator()) / to_double(q.denominator());
}

Rational pow2_rational(int e) {
  BigInt p = BigInt(1) << static_cast<unsigned>(e < 0 ? -e : e);
  return e >= 0 ? Rational(p, 1) : Rational(1, p);
}

Rational pow_rational(const Rational& q, unsigned e) {
  Rational out(1, 1);
  for (unsigned i = 0; i < e; ++i) out *= q;
  return out;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal", 0);
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt num = 0;
  BigInt den = 1;
  bool any_digit = false;
  for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos) {
    num = num * 10 + (text[pos] - '0');
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos) {
      num = num * 10 + (text[pos] - '0');
      den *= 10;
      any_digit = true;
    }
  } else if (pos < text.size() && text[pos] == '/') {
    ++pos;
    BigInt d = 0;
    bool den_digit = false;
    for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos) {
      d = d * 10 + (text[pos] - '0');
      den_digit = true;
    }
    if (!den_digit || d == 0) throw ParseError("bad denominator", pos);
    den = d;
  }
  if (!any_digit) throw ParseError("expected digits", pos);
  if (pos != text.size()) throw ParseError("trailing characters in rational", pos);
  if (negative) num = -num;
  return Rational(num, den);
}

std::string rational_to_string(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", to_double(q));
  return buf;
}

}  // namespace folnerlab
