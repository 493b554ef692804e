#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace domino {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline double to_double(const BigRat& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& z) { return z.convert_to<double>(); }

/// Lossless text form: plain decimal for integers, "p/q" otherwise.
inline std::string to_string(const BigRat& q) {
  if (boost::multiprecision::denominator(q) == 1)
    return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

/// Parse the format produced by to_string(BigRat).
inline BigRat bigrat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return BigRat(BigInt(s));
  return BigRat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

}  // namespace domino
