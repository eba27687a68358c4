#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace treemorph {

using BigInt = mpz_class;
using Rat = mpq_class;

/// Floor of sqrt(v), v >= 0.
inline BigInt isqrt(const BigInt& v) {
    assert(v >= 0);
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const BigInt& v, BigInt* root = nullptr) {
    if (v < 0) return false;
    BigInt r = isqrt(v);
    if (root) *root = r;
    return r * r == v;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt rat_floor(const Rat& q) {
    return floor_div(q.get_num(), q.get_den());
}

inline BigInt rat_ceil(const Rat& q) {
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return c;
}

/// floor(a / sqrt(l)) for integer a (any sign) and integer l >= 1.
inline BigInt floor_div_sqrt(const BigInt& a, const BigInt& l) {
    assert(l >= 1);
    if (a >= 0) {
        // k = floor(a/sqrt(l))  <=>  k^2 l <= a^2 < (k+1)^2 l, k >= 0
        BigInt a2 = a * a;
        BigInt k = isqrt(floor_div(a2, l));
        while (k > 0 && k * k * l > a2) --k;
        while ((k + 1) * (k + 1) * l <= a2) ++k;
        return k;
    }
    BigInt mag = -a;
    BigInt f = floor_div_sqrt(mag, l);
    bool exact = (f * f * l == mag * mag);
    return exact ? BigInt(-f) : BigInt(-f - 1);
}

/// Rational enclosure [lo, hi] of sqrt(v) for rational v >= 0 with hi - lo <= 2^-bits * scale.
inline std::pair<Rat, Rat> sqrt_enclosure(const Rat& v, unsigned bits = 64) {
    assert(v >= 0);
    BigInt p = v.get_num(), q = v.get_den();
    BigInt scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
    // sqrt(p/q) = sqrt(p*q)/q
    BigInt m = isqrt(p * q * scale * scale);
    Rat lo(m, q * scale);
    Rat hi(m + 1, q * scale);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

/// Smallest convenient rational >= sqrt(v); exact when v is a square of a rational.
inline Rat sqrt_upper(const Rat& v, unsigned bits = 32) {
    assert(v >= 0);
    BigInt np, dp;
    if (is_perfect_square(v.get_num(), &np) && is_perfect_square(v.get_den(), &dp)) {
        Rat r(np, dp);
        r.canonicalize();
        return r;
    }
    return sqrt_enclosure(v, bits).second;
}

/// Sign of x + y*sqrt(d), d >= 0 integer.
inline int sign_plus_root(const BigInt& x, const BigInt& y, const BigInt& d) {
    int sx = sgn(x), sy = sgn(y);
    if (d == 0 || sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    // opposite signs: compare x^2 against y^2 d
    BigInt lhs = x * x, rhs = y * y * d;
    if (lhs == rhs) return 0;
    // |x| > |y|sqrt(d) ? sign of x : sign of y
    return (lhs > rhs) ? sx : sy;
}

inline BigInt to_bigint(std::int64_t v) { return BigInt(static_cast<long>(v)); }

}  // namespace treemorph
