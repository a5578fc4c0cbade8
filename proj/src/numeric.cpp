#include "cyclocode/numeric.hpp"

#include <limits>
#include <sstream>

namespace cyclocode {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

BigInt power(std::uint64_t base, std::uint64_t exponent) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

std::string format_rational(const Rational& value, int digits) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    std::ostringstream out;
    out << num.str() << '/' << den.str() << " (≈ " << BigFloat(value).str(digits) << ')';
    return out.str();
}

std::string format_real(const BigFloat& value, int digits) {
    return value.str(digits, std::ios_base::scientific);
}

double to_double(const Rational& value) { return static_cast<double>(BigFloat(value)); }

std::uint64_t saturate_u64(const BigInt& value) {
    if (value < 0) return 0;
    if (value > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(value);
}

}  // namespace cyclocode
