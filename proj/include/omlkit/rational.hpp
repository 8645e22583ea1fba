#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace omlkit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input (files, argv, JSON). CLI exit code 2.
struct ParseError : Error {
  using Error::Error;
};

/// Violated precondition or failed domain check. CLI exit code 1.
struct DomainError : Error {
  using Error::Error;
};

inline Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int int_lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  Int g = int_gcd(a, b);
  Int l = (a / g) * b;
  return l < 0 ? -l : l;
}

/// gcd of the absolute values of a list; 0 for an all-zero list.
inline Int content(const std::vector<Int>& xs) {
  Int g = 0;
  for (const Int& x : xs) g = int_gcd(g, x);
  return g;
}

/// Parse "p" or "p/q" with optional leading sign. Throws ParseError.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rat(num, den);
  } catch (const std::runtime_error& e) {
    throw ParseError("bad rational literal '" + s + "'");
  }
}

inline std::string rat_str(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace omlkit
