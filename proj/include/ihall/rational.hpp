#pragma once

// Exact integer/rational arithmetic helpers on top of GMP.
// All counting in this library is exact; nothing here ever rounds.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ihall/errors.hpp"

namespace ihall {

using Int = mpz_class;
using Rat = mpq_class;

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int ipow(long base, unsigned long e) { return ipow(Int(base), e); }

// base^e for possibly negative e (result rational).
inline Rat rpow(const Rat& base, long e) {
    if (e >= 0) {
        Rat r;
        mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), (unsigned long)e);
        mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), (unsigned long)e);
        r.canonicalize();
        return r;
    }
    if (base == 0) throw NotInvertible("0 has no negative power");
    return rpow(Rat(1) / base, -e);
}

// Gaussian binomial coefficient [n choose k]_q at an integer value of q:
// the number of k-dimensional subspaces of an n-dimensional F_q vector space.
inline Int gauss_binom(long n, long k, const Int& q) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    // Product formula, kept exact by interleaving multiplications and exact divisions.
    Int num = 1, den = 1;
    for (long i = 0; i < k; ++i) {
        num *= ipow(q, (unsigned long)(n - i)) - 1;
        den *= ipow(q, (unsigned long)(i + 1)) - 1;
    }
    Int r = num / den;
    if (r * den != num) throw std::logic_error("gauss_binom: inexact division");
    return r;
}

// Number of invertible n x n matrices over F_q.
inline Int gl_order(long n, const Int& q) {
    Int r = 1;
    for (long i = 0; i < n; ++i) r *= ipow(q, (unsigned long)n) - ipow(q, (unsigned long)i);
    return r;
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

// Parse a rational "a" or "a/b"; throws ParseError on garbage.
inline Rat rat_parse(const std::string& s, std::size_t pos_offset = 0) {
    if (s.empty()) throw ParseError("empty rational", pos_offset);
    Rat r;
    if (r.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'", pos_offset);
    r.canonicalize();
    return r;
}

} // namespace ihall
