#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace hone {

// Exact unbounded integers and rationals. Backed by GMP; mpq_class keeps
// rationals canonical (lowest terms, positive denominator) after every
// operation, which is required here because intermediate continued-fraction
// values blow up in size otherwise.
using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

inline BigInt pow_int(const BigInt& base, unsigned long exp) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

/// True iff r has denominator 1.
inline bool is_integer(const BigRat& r) { return r.get_den() == 1; }

inline std::string to_string(const BigInt& x) { return x.get_str(); }
inline std::string to_string(const BigRat& x) { return x.get_str(); }

// Base is forced to 10: the gmpxx default of 0 would read leading zeros as
// octal, which bites when reparsing zero-padded decimal output.
inline BigInt int_from_string(const std::string& s) { return BigInt(s, 10); }

/// Decimal digit count of |x| (digits(0) = 1).
inline std::size_t digit_count(const BigInt& x) {
    if (x == 0) return 1;
    return mpz_sizeinbase(x.get_mpz_t(), 10);
}

inline std::size_t bit_length(const BigInt& x) {
    if (x == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

// Natural log of a huge integer together with a relative error bound.
// Inputs of 10^5..10^6 digits are routine, so the value is never obtained by
// converting the whole integer to double.
struct LogValue {
    double value = 0.0;
    double rel_err_bound = 0.0;

    double abs_err() const { return std::abs(value) * rel_err_bound; }
};

/// Natural log of x >= 1, computed from the bit length and the leading
/// 64 bits of the magnitude. Relative error stays below 1e-15 for x >= 2.
LogValue log_big(const BigInt& x);

/// theta u_k = u_{k+1} / u_k.
inline BigRat theta(const BigRat& u_k, const BigRat& u_k1) {
    if (u_k == 0) throw std::domain_error("theta: u_k = 0");
    return u_k1 / u_k;
}

/// theta^2 u_k = u_{k+2} u_k / u_{k+1}^2.
inline BigRat theta2(const BigRat& u_k, const BigRat& u_k1, const BigRat& u_k2) {
    if (u_k1 == 0) throw std::domain_error("theta2: u_{k+1} = 0");
    return (u_k2 * u_k) / (u_k1 * u_k1);
}

}  // namespace hone
