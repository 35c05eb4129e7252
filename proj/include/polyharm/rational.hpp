// Arbitrary-precision rational arithmetic (GMP-backed) plus small helpers.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace polyharm {

using Rational = boost::multiprecision::mpq_rational;
using Integer  = boost::multiprecision::mpz_int;

// q^e for any integer e (negative exponents invert; 0^0 = 1).
inline Rational rat_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q == 0) {
        if (e < 0) throw std::domain_error("rat_pow: zero base with negative exponent");
        return Rational(0);
    }
    Rational base = e > 0 ? q : Rational(1) / q;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

inline Integer rat_num(const Rational& q) { return numerator(q); }
inline Integer rat_den(const Rational& q) { return denominator(q); }

// "3", "-7/8", ... (GMP canonicalizes to lowest terms, positive denominator).
inline Rational rat_parse(const std::string& s) { return Rational(s); }

inline std::string rat_str(const Rational& q) { return q.str(); }

// Binomial coefficient C(a, k) for rational a and integer k >= 0.
inline Rational rat_binom(const Rational& a, long k) {
    Rational acc(1);
    for (long i = 0; i < k; ++i) acc *= (a - i) / Rational(i + 1);
    return acc;
}

inline Integer int_factorial(long n) {
    Integer acc(1);
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

} // namespace polyharm
