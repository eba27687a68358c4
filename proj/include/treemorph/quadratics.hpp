#pragma once

#include <optional>
#include <vector>

#include "treemorph/geometry.hpp"
#include "treemorph/numeric.hpp"

namespace treemorph {

/// Linear integer polynomial b*t + c.
struct LinPoly {
    BigInt b, c;
    Rat eval(const Rat& t) const { return Rat(b) * t + Rat(c); }
    bool is_zero() const { return b == 0 && c == 0; }
};

/// Integer quadratic a*t^2 + b*t + c.
struct QuadPoly {
    BigInt a, b, c;

    bool is_zero() const { return a == 0 && b == 0 && c == 0; }
    Rat eval(const Rat& t) const { return (Rat(a) * t + Rat(b)) * t + Rat(c); }
    BigInt discriminant() const { return b * b - 4 * a * c; }

    friend QuadPoly operator-(const QuadPoly& x, const QuadPoly& y) {
        return QuadPoly{x.a - y.a, x.b - y.b, x.c - y.c};
    }
};

/// Linear motion of a point: p(t) = at t=0 start, t=1 end.
struct MovingPoint {
    PtI p0, d;  // position p0 + t*d
    static MovingPoint between(const PtI& from, const PtI& to) { return {from, to - from}; }
    PtQ at(const Rat& t) const { return PtQ(Rat(p0.x) + t * Rat(d.x), Rat(p0.y) + t * Rat(d.y)); }
};

/// cross(P(t), Q(t)) for linear vector-valued P, Q given by (p0, dp), (q0, dq).
inline QuadPoly cross_poly(const PtI& p0, const PtI& dp, const PtI& q0, const PtI& dq) {
    return QuadPoly{cross(dp, dq), cross(p0, dq) + cross(dp, q0), cross(p0, q0)};
}

inline QuadPoly dot_poly(const PtI& p0, const PtI& dp, const PtI& q0, const PtI& dq) {
    return QuadPoly{dot(dp, dq), dot(p0, dq) + dot(dp, q0), dot(p0, q0)};
}

/// Real number of the form (p + q*sqrt(d)) / r with integer p, q, r > 0, d >= 0.
struct QuadExtNumber {
    BigInt p, q, r, d;

    static QuadExtNumber rational(const Rat& v) {
        return QuadExtNumber{v.get_num(), 0, v.get_den(), 0};
    }

    int sign() const { return sign_plus_root(p, q, d); }

    /// sign of (this - rational v)
    int compare_rational(const Rat& v) const {
        // (p + q sqrt(d))/r - a/b  ~  sign of (p*b - a*r) + q*b*sqrt(d)
        BigInt a = v.get_num(), b = v.get_den();
        return sign_plus_root(p * b - a * r, q * b, d);
    }

    bool in_open_01() const { return sign() > 0 && compare_rational(Rat(1)) < 0; }

    /// Exact rational value if q*sqrt(d) is rational (d square or q == 0).
    std::optional<Rat> exact_rational() const {
        if (q == 0 || d == 0) {
            Rat v(p, r);
            v.canonicalize();
            return v;
        }
        BigInt s;
        if (is_perfect_square(d, &s)) {
            Rat v(p + q * s, r);
            v.canonicalize();
            return v;
        }
        return std::nullopt;
    }

    /// Rational enclosure [lo, hi] with hi - lo <= 2^-bits-ish.
    std::pair<Rat, Rat> enclosure(unsigned bits = 48) const {
        if (auto ex = exact_rational()) return {*ex, *ex};
        auto [slo, shi] = sqrt_enclosure(Rat(d), bits);
        Rat lo, hi;
        if (q >= 0) {
            lo = (Rat(p) + Rat(q) * slo) / Rat(r);
            hi = (Rat(p) + Rat(q) * shi) / Rat(r);
        } else {
            lo = (Rat(p) + Rat(q) * shi) / Rat(r);
            hi = (Rat(p) + Rat(q) * slo) / Rat(r);
        }
        return {lo, hi};
    }

    /// Sign of an integer quadratic evaluated at this number, exact.
    int sign_of_quad(const QuadPoly& f) const {
        // f((p+q sqrt d)/r) * r^2 = X + Y sqrt(d)
        BigInt X = f.a * (p * p + q * q * d) + f.b * r * p + f.c * r * r;
        BigInt Y = f.a * 2 * p * q + f.b * r * q;
        return sign_plus_root(X, Y, d);
    }
};

/// Real roots of an integer quadratic (degenerate degrees handled), ascending.
/// For a genuine quadratic with positive discriminant the two roots are returned
/// in ascending order. Identically-zero polynomials yield no roots here; callers
/// handle that case explicitly.
inline std::vector<QuadExtNumber> real_roots(const QuadPoly& f) {
    std::vector<QuadExtNumber> out;
    if (f.a == 0) {
        if (f.b == 0) return out;  // constant (possibly zero): no isolated roots
        Rat root(-f.c, f.b);
        root.canonicalize();
        out.push_back(QuadExtNumber::rational(root));
        return out;
    }
    BigInt disc = f.discriminant();
    if (disc < 0) return out;
    BigInt r2 = 2 * f.a;
    if (disc == 0) {
        Rat root(-f.b, r2);
        root.canonicalize();
        out.push_back(QuadExtNumber::rational(root));
        return out;
    }
    // (-b -+ sqrt(disc)) / (2a), normalized to positive denominator
    BigInt sq_sign = (r2 > 0) ? 1 : -1;
    QuadExtNumber lo{-f.b * sq_sign, -1, abs(r2), disc};
    QuadExtNumber hi{-f.b * sq_sign, 1, abs(r2), disc};
    out.push_back(lo);
    out.push_back(hi);
    return out;
}

/// Common root in the open interval (0,1) of two linear polynomials, if any.
/// Returns the time of the first (smallest) such root.
inline std::optional<Rat> common_linear_root_01(const LinPoly& f, const LinPoly& g) {
    auto root_of = [](const LinPoly& h) -> std::optional<Rat> {
        if (h.b == 0) return std::nullopt;
        Rat t(-h.c, h.b);
        t.canonicalize();
        return t;
    };
    if (f.is_zero() && g.is_zero()) return std::nullopt;  // callers exclude this
    std::optional<Rat> t;
    if (!f.is_zero()) {
        t = root_of(f);
        if (!t) return std::nullopt;          // f constant nonzero
        if (g.eval(*t) != 0) return std::nullopt;
    } else {
        t = root_of(g);
        if (!t) return std::nullopt;
    }
    if (*t > 0 && *t < 1) return t;
    return std::nullopt;
}

}  // namespace treemorph
