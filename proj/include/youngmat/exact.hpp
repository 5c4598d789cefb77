#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace youngmat {

/// Arbitrary-precision integer and rational used for all exact moment values.
using BigNat = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigRat make_rational(const BigNat& num, const BigNat& den) { return BigRat(num, den); }

inline double to_double(const BigNat& x) { return x.convert_to<double>(); }

// Converts numerator and denominator separately when either exceeds the
// double range, so ratios of huge integers stay finite.
double to_double(const BigRat& x);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const BigRat& x);
inline std::string to_string(const BigNat& x) { return x.str(); }

BigNat pow(const BigNat& base, unsigned exponent);

}  // namespace youngmat
