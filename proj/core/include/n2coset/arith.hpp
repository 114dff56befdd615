#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace n2coset {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat(const Int& num, const Int& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Int rat_num(const Rational& r) { return Int(r.get_num()); }
inline Int rat_den(const Rational& r) { return Int(r.get_den()); }

/* Largest integer <= r. */
inline Int rat_floor(const Rational& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), mpq_numref(r.get_mpq_t()), mpq_denref(r.get_mpq_t()));
    return q;
}

inline Int rat_ceil(const Rational& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), mpq_numref(r.get_mpq_t()), mpq_denref(r.get_mpq_t()));
    return q;
}

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("bignum does not fit in long");
    return z.get_si();
}

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

/* "num/den" (or plain "num") with both parts in base 10. */
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    Rational r;
    if (slash == std::string::npos) {
        r = Rational(Int(s));
    } else {
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
        r = rat(num, den);
    }
    r.canonicalize();
    return r;
}

inline std::string rational_str(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/* (-1)^r for a rational with odd denominator (real root convention). */
inline int parity_sign(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (mpz_even_p(c.get_den().get_mpz_t()))
        throw std::domain_error("(-1)^x undefined for even-denominator exponent " + rational_str(r));
    return mpz_odd_p(c.get_num().get_mpz_t()) ? -1 : 1;
}

}  // namespace n2coset
