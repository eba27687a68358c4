#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "treemorph/numeric.hpp"

namespace treemorph {

template <class T>
struct Pt {
    T x{}, y{};

    Pt() = default;
    Pt(T px, T py) : x(std::move(px)), y(std::move(py)) {}

    friend Pt operator+(const Pt& a, const Pt& b) { return Pt(a.x + b.x, a.y + b.y); }
    friend Pt operator-(const Pt& a, const Pt& b) { return Pt(a.x - b.x, a.y - b.y); }
    friend Pt operator*(const T& s, const Pt& p) { return Pt(s * p.x, s * p.y); }
    friend bool operator==(const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Pt& a, const Pt& b) { return !(a == b); }
};

using PtI = Pt<BigInt>;
using PtQ = Pt<Rat>;
using Pt64 = Pt<std::int64_t>;

template <class T>
T cross(const Pt<T>& a, const Pt<T>& b) {
    return a.x * b.y - a.y * b.x;
}

template <class T>
T dot(const Pt<T>& a, const Pt<T>& b) {
    return a.x * b.x + a.y * b.y;
}

template <class T>
T norm_sq(const Pt<T>& a) {
    return a.x * a.x + a.y * a.y;
}

/// Sign of the turn a->b->c: +1 ccw, -1 cw, 0 collinear.
template <class T>
int orient(const Pt<T>& a, const Pt<T>& b, const Pt<T>& c) {
    T v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
}

template <class T>
int sign_of(const T& v) {
    return (v > 0) - (v < 0);
}

/// p lies on the closed segment [a, b].
template <class T>
bool on_segment_closed(const Pt<T>& p, const Pt<T>& a, const Pt<T>& b) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

/// Closed segments [a,b] and [c,d] share at least one point.
template <class T>
bool segments_intersect(const Pt<T>& a, const Pt<T>& b, const Pt<T>& c, const Pt<T>& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment_closed(c, a, b)) return true;
    if (o2 == 0 && on_segment_closed(d, a, b)) return true;
    if (o3 == 0 && on_segment_closed(a, c, d)) return true;
    if (o4 == 0 && on_segment_closed(b, c, d)) return true;
    return false;
}

inline PtQ to_rat(const PtI& p) { return PtQ(Rat(p.x), Rat(p.y)); }

/// Squared distance from p to the closed segment [a, b], exact rational.
inline Rat point_segment_dist_sq(const PtQ& p, const PtQ& a, const PtQ& b) {
    PtQ ab = b - a;
    Rat denom = norm_sq(ab);
    if (denom == 0) return norm_sq(p - a);
    Rat t = dot(p - a, ab) / denom;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    PtQ proj = a + PtQ(t * ab.x, t * ab.y);
    return norm_sq(p - proj);
}

/// Squared distance from p to the infinite line through a != b, exact rational.
inline Rat point_line_dist_sq(const PtQ& p, const PtQ& a, const PtQ& b) {
    PtQ ab = b - a;
    Rat denom = norm_sq(ab);
    if (denom == 0) throw std::invalid_argument("point_line_dist_sq: a == b");
    Rat c = cross(ab, p - a);
    return c * c / denom;
}

/// Closed axis-aligned box [x0,x1] x [y0,y1].
template <class T>
struct Box {
    T x0, x1, y0, y1;

    bool contains(const Pt<T>& p) const {
        return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
    }
    bool intersects(const Box& o) const {
        return !(x1 < o.x0 || o.x1 < x0 || y1 < o.y0 || o.y1 < y0);
    }
};

using BoxI = Box<BigInt>;

/// Closed segment [a,b] meets closed box (Liang-Barsky over rationals).
inline bool segment_intersects_box(const PtI& a, const PtI& b, const BoxI& box) {
    if (box.contains(a) || box.contains(b)) return true;
    PtI d = b - a;
    Rat t0(0), t1(1);
    auto clip = [&](const BigInt& denom, const BigInt& num) {
        // denom * t <= num
        if (denom == 0) return num >= 0;
        Rat t(num, denom);
        t.canonicalize();
        if (denom > 0) {
            if (t < t1) t1 = t;
        } else {
            if (t > t0) t0 = t;
        }
        return t0 <= t1;
    };
    return clip(d.x, box.x1 - a.x) && clip(-d.x, a.x - box.x0) &&
           clip(d.y, box.y1 - a.y) && clip(-d.y, a.y - box.y0);
}

}  // namespace treemorph
