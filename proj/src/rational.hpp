#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace cubex {

// All measure weights, probabilities and distances are exact rationals.  No
// floating point value is ever stored in a persisted artifact.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical serialization: "num/den" with den > 0, always including the
// denominator ("1/1", "-3/4").  boost keeps rationals normalized, so equal
// values always print identically.
inline std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "num/den" or a bare integer "num".  Denominator must be positive.
inline Rational parse_fraction(const std::string& s) {
  auto bad = [&]() { throw ParseError("malformed rational: '" + s + "'"); };
  if (s.empty()) bad();
  std::size_t slash = s.find('/');
  std::string num = s.substr(0, slash == std::string::npos ? s.size() : slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!is_int(num) || !is_int(den)) bad();
  BigInt n(num), d(den);
  if (d <= 0) bad();
  return Rational(n, d);
}

// C(n, k) with the usual convention that out-of-range k gives 0.
inline BigInt binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace cubex
