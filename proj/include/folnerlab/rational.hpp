#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace folnerlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

double to_double(const Rational& q);
double to_double(const BigInt& n);

/// 2^e for any integer e, exact.
Rational pow2_rational(int e);

/// q^e for e >= 0, exact.
Rational pow_rational(const Rational& q, unsigned e);

/// Parses "3", "-7/2" or "4.25" into an exact rational.
Rational parse_rational(const std::string& text);

/// Decimal rendering with enough digits to round-trip a double.
std::string rational_to_string(const Rational& q);

}  // namespace folnerlab
