#pragma once

#include <gmpxx.h>

#include <string>

namespace covertrees {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline std::string to_decimal(const BigInt& value) { return value.get_str(10); }

inline std::string to_decimal(const BigRational& value) {
    BigRational canonical(value);
    canonical.canonicalize();
    return canonical.get_str(10);
}

inline BigInt pow2(unsigned long exponent) {
    BigInt result;
    mpz_ui_pow_ui(result.get_mpz_t(), 2, exponent);
    return result;
}

inline BigInt pow(const BigInt& base, unsigned long exponent) {
    BigInt result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
    return result;
}

}  // namespace covertrees
