#ifndef HEIS_RATIONAL_HPP
#define HEIS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace heis {

/// Arbitrary-precision exact rational.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "p/q", "p" or a finite decimal such as "0.25" exactly.
inline Rational parse_rational(const std::string& s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(s);
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  BigInt den = 1;
  for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return Rational(BigInt(digits), den);
}

}  // namespace heis

#endif  // HEIS_RATIONAL_HPP
