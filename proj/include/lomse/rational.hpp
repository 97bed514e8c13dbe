#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lomse {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) { return Rational(BigInt(num), BigInt(den)); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// "num/den" with den > 0 always printed, so zero reads "0/1".
inline std::string to_fraction_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

}  // namespace lomse
