#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace cyclocode {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// 50 decimal digits, binary exponent range wide enough for q^n with n in the tens of thousands.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt power(std::uint64_t base, std::uint64_t exponent);

/// "p/q (≈ d)" for non-integers, plain "p" for integers.
std::string format_rational(const Rational& value, int digits = 10);
/// Scientific notation with the given number of significant digits.
std::string format_real(const BigFloat& value, int digits = 17);

double to_double(const Rational& value);

/// Saturating conversion for budget arithmetic.
std::uint64_t saturate_u64(const BigInt& value);

}  // namespace cyclocode
