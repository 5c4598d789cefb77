#include "youngmat/exact.hpp"

#include <cmath>

namespace youngmat {

double to_double(const BigRat& x) {
    const BigNat num = boost::multiprecision::numerator(x);
    const BigNat den = boost::multiprecision::denominator(x);
    if (num == 0) return 0.0;
    const BigNat mag = abs(num);
    const long num_bits = static_cast<long>(msb(mag));
    const long den_bits = static_cast<long>(msb(den));
    const long num_shift = num_bits > 62 ? num_bits - 62 : 0;
    const long den_shift = den_bits > 62 ? den_bits - 62 : 0;
    const double head = static_cast<double>(static_cast<BigNat>(mag >> num_shift)) /
                        static_cast<double>(static_cast<BigNat>(den >> den_shift));
    const double value = std::ldexp(head, static_cast<int>(num_shift - den_shift));
    return num < 0 ? -value : value;
}

std::string to_string(const BigRat& x) {
    const BigNat den = boost::multiprecision::denominator(x);
    if (den == 1) return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

BigNat pow(const BigNat& base, unsigned exponent) {
    return boost::multiprecision::pow(base, exponent);
}

}  // namespace youngmat
