#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treemorph/drawing.hpp"
#include "treemorph/morph.hpp"

namespace treemorph {

/// Constants for the scaling pipeline: k0 = 150, beta0 = 800, sin(alpha) = 1/(10 D0^2),
/// ell0 = k0 D0^2 n, B0 = beta0 D0^3 n. All defining inequalities are asserted exactly.
struct AlgorithmConstants {
    int n = 0;
    BigInt d0;
    int k0 = 150;
    int beta0 = 800;
    Rat sin_alpha;   // 1 / (10 D0^2)
    BigInt ell0;     // k0 * D0^2 * n
    BigInt b0;       // beta0 * D0^3 * n

    BigInt big_box_side() const { return ell0 + 4 * n; }     // B(v)
    BigInt medium_box_side() const { return ell0; }          // M(v)
    BigInt small_box_side() const { return BigInt(2 * n); }  // S(v)
};

inline AlgorithmConstants make_constants(int n, const BigInt& d0) {
    if (n < 1 || d0 < 1) throw std::invalid_argument("make_constants: need n >= 1, D0 >= 1");
    AlgorithmConstants c;
    c.n = n;
    c.d0 = d0;
    c.sin_alpha = Rat(BigInt(1), 10 * d0 * d0);
    c.sin_alpha.canonicalize();
    c.ell0 = BigInt(c.k0) * d0 * d0 * n;
    c.b0 = BigInt(c.beta0) * d0 * d0 * d0 * n;

    auto check = [](bool ok, const char* what) {
        if (!ok) throw std::logic_error(std::string("make_constants: violated ") + what);
    };
    BigInt d2 = d0 * d0, d4 = d2 * d2;
    Rat s2 = c.sin_alpha * c.sin_alpha;  // 1 / (100 D0^4)
    check(c.k0 > 12, "k0 > 12");
    check(c.beta0 > 4 * c.k0, "beta0 > 4 k0");
    check(BigInt(c.beta0) * c.beta0 > 2 * BigInt(c.k0 + 4) * (c.k0 + 4), "beta0 > sqrt2(k0+4)");
    // sin a >= sqrt2 / (beta0 D0^3): squared
    check(s2 >= Rat(2, BigInt(c.beta0) * c.beta0 * d4 * d2), "sin a >= sqrt2/(beta0 D0^3)");
    check(c.sin_alpha >= Rat(12, BigInt(c.k0) * d2), "sin a >= 12/(k0 D0^2)");
    check(s2 < Rat(1, 2), "alpha < 45 deg");
    check(s2 < Rat(1, 8 * d4), "sin a < 1/(2 sqrt2 D0^2)");
    check(c.sin_alpha < Rat(1, 4 * d2), "sin a < 1/(4 D0^2)");
    check(c.sin_alpha < Rat(1, 8 * d2), "sin a < 1/(8 D0^2)");
    return c;
}

enum class HitTest { No, Yes, Borderline };

/// Circular sector for an edge (v,u) with v the unvisited parent: apex at v,
/// bisected by the edge direction in Delta_0, radius ell(e) + sqrt(2) n, half-angle
/// alpha with sin(alpha) = 1/(10 D0^2). Point tests are exact; segment and box
/// tests use adaptive rational intervals and report borderline outcomes.
struct Sector {
    int parent = -1, child = -1;
    PtI apex;       // position of v in Delta_0 (the parent never moves while unvisited)
    PtI dir;        // child - parent in Delta_0
    BigInt len_sq;  // |dir|^2
    int n = 0;
    BigInt d4;      // D0^4

    bool dir_in_wedge(const PtQ& d) const {
        if (d.x == 0 && d.y == 0) return true;
        Rat dp = dot(d, PtQ(Rat(dir.x), Rat(dir.y)));
        if (dp < 0) return false;
        Rat cr = cross(d, PtQ(Rat(dir.x), Rat(dir.y)));
        // sin^2(theta) <= sin^2(alpha)  <=>  100 D0^4 cr^2 <= |d|^2 len_sq
        return Rat(100 * d4) * cr * cr <= norm_sq(d) * Rat(len_sq);
    }

    bool dist_sq_within_radius(const Rat& dist_sq) const {
        // dist <= sqrt(len_sq) + sqrt(2) n  <=>  t := dist^2 - len_sq - 2n^2 <= 2 n sqrt(2 len_sq)
        Rat t = dist_sq - Rat(len_sq) - Rat(2 * n * n);
        if (t <= 0) return true;
        return t * t <= Rat(8 * BigInt(n) * n * len_sq);
    }

    bool contains_point(const PtQ& p) const {
        PtQ d = p - PtQ(Rat(apex.x), Rat(apex.y));
        return dir_in_wedge(d) && dist_sq_within_radius(norm_sq(d));
    }

    bool contains_point(const PtI& p) const { return contains_point(to_rat(p)); }

    /// Radius enclosure [lo, hi] as rationals.
    std::pair<Rat, Rat> radius_enclosure(unsigned bits = 48) const {
        auto [llo, lhi] = sqrt_enclosure(Rat(len_sq), bits);
        auto [slo, shi] = sqrt_enclosure(Rat(2), bits);
        return {llo + slo * n, lhi + shi * n};
    }

    /// Whole-segment-outside certificates over rational interval arithmetic:
    /// either every point is beyond the radius upper bound, or the whole segment
    /// is strictly outside the wedge.
    bool piece_certainly_outside(const PtQ& a, const PtQ& b, const Rat& r_hi_sq) const {
        PtQ ap(Rat(apex.x), Rat(apex.y));
        if (point_segment_dist_sq(ap, a, b) > r_hi_sq) return true;
        PtQ da = a - ap, db = b - ap;
        PtQ bis(Rat(dir.x), Rat(dir.y));
        Rat dota = dot(da, bis), dotb = dot(db, bis);
        if (dota < 0 && dotb < 0) return true;  // behind the apex for the whole piece
        // cross is linear along the piece; if min |cross| over the piece is large
        // enough, the whole piece sits outside the wedge cone
        Rat ca = cross(da, bis), cb = cross(db, bis);
        if (sgn(ca) == sgn(cb) || (ca == 0 && cb == 0)) {
            Rat cmin = std::min(abs(ca), abs(cb));
            Rat dmax = std::max(norm_sq(da), norm_sq(db));
            if (Rat(100 * d4) * cmin * cmin > dmax * Rat(len_sq)) return true;
        }
        return false;
    }

    HitTest intersects_segment(const PtQ& a, const PtQ& b, int depth = 48) const {
        if (contains_point(a) || contains_point(b)) return HitTest::Yes;
        Rat r_hi = radius_enclosure().second;
        Rat r_hi_sq = r_hi * r_hi;
        return intersects_segment_rec(a, b, r_hi_sq, depth);
    }

    HitTest intersects_segment(const PtI& a, const PtI& b, int depth = 48) const {
        return intersects_segment(to_rat(a), to_rat(b), depth);
    }

    HitTest intersects_box(const BoxI& box, int depth = 48) const {
        PtQ c1(Rat(box.x0), Rat(box.y0)), c2(Rat(box.x1), Rat(box.y0));
        PtQ c3(Rat(box.x1), Rat(box.y1)), c4(Rat(box.x0), Rat(box.y1));
        for (const auto& c : {c1, c2, c3, c4})
            if (contains_point(c)) return HitTest::Yes;
        if (box.contains(apex)) return HitTest::Yes;
        HitTest worst = HitTest::No;
        for (const auto& [a, b] :
             {std::pair{c1, c2}, std::pair{c2, c3}, std::pair{c3, c4}, std::pair{c4, c1}}) {
            HitTest h = intersects_segment(a, b);
            if (h == HitTest::Yes) return HitTest::Yes;
            if (h == HitTest::Borderline) worst = HitTest::Borderline;
        }
        return worst;
    }

  private:
    HitTest intersects_segment_rec(const PtQ& a, const PtQ& b, const Rat& r_hi_sq,
                                   int depth) const {
        if (piece_certainly_outside(a, b, r_hi_sq)) return HitTest::No;
        PtQ mid(Rat(a.x + b.x) / 2, Rat(a.y + b.y) / 2);
        if (contains_point(mid)) return HitTest::Yes;
        if (depth == 0) return HitTest::Borderline;
        HitTest left = intersects_segment_rec(a, mid, r_hi_sq, depth - 1);
        if (left == HitTest::Yes) return HitTest::Yes;
        HitTest right = intersects_segment_rec(mid, b, r_hi_sq, depth - 1);
        if (right == HitTest::Yes) return HitTest::Yes;
        if (left == HitTest::Borderline || right == HitTest::Borderline)
            return HitTest::Borderline;
        return HitTest::No;
    }
};

/// State of the Theorem-3 pipeline: scaled drawing, visited flags, per-edge sectors
/// and landing box centers, all computed once at Delta_0 and inherited.
struct PartialState {
    TreePtr tree;  // rerooted at a leaf
    AlgorithmConstants consts;
    GridDrawing delta0;
    GridDrawing cur;
    std::vector<bool> visited;
    std::vector<Sector> sector;   // indexed by child node; entry for root unused
    std::vector<PtI> landing;     // c_u, indexed by child node; entry for root unused
    std::vector<int> subtree_size;
    std::vector<BigInt> subtree_height;  // canonical height

    int n() const { return tree->size(); }

    BoxI box_around(int v, const BigInt& side) const {
        // the side is even by construction (ell0 and 4n are even, 2n is even)
        BigInt half = side / 2;
        const PtI& p = cur.pos[v];
        return BoxI{p.x - half, p.x + half, p.y - half, p.y + half};
    }

    Orientation entry_orientation(int u) const {
        // property (a): upward canonical iff y(u) <= y(parent(u)), evaluated at Delta_0
        int par = tree->parent(u);
        return (delta0.pos[u].y <= delta0.pos[par].y) ? Orientation::Upward
                                                      : Orientation::Downward;
    }
};

namespace detail {

/// floor(q_coord) for q = v + dir * m / sqrt(L), per coordinate.
inline BigInt landing_floor(const BigInt& v_coord, const BigInt& dir_coord, const BigInt& m,
                            const BigInt& len_sq) {
    return v_coord + floor_div_sqrt(dir_coord * m, len_sq);
}

/// Compare squared distances from q (on the edge, irrational) to two grid corners.
/// d^2 * L = X + Y sqrt(L) with X, Y integers; returns sign of d1^2 - d2^2.
inline int landing_dist_cmp(const BigInt& A, const BigInt& B, const BigInt& len_sq,
                            const PtI& rel1, const PtI& rel2) {
    auto parts = [&](const PtI& r) {
        BigInt X = A * A + B * B + (r.x * r.x + r.y * r.y) * len_sq;
        BigInt Y = -2 * (A * r.x + B * r.y);
        return std::pair{X, Y};
    };
    auto [x1, y1] = parts(rel1);
    auto [x2, y2] = parts(rel2);
    return sign_plus_root(x1 - x2, y1 - y2, len_sq);
}

}  // namespace detail

/// Landing box center c_u for the edge (v,u) in Delta_0: the point q_u on the edge
/// at distance ell0/2 - 3n from v, taken exactly if it is a grid point, otherwise
/// the nearest corner of its grid cell on the correct y-side (ties: smaller y,
/// then smaller x).
inline PtI compute_landing_center(const AlgorithmConstants& c, const PtI& vpos, const PtI& upos) {
    PtI dir = upos - vpos;
    BigInt len_sq = norm_sq(dir);
    BigInt m = c.ell0 / 2 - 3 * c.n;
    BigInt A = dir.x * m, B = dir.y * m;

    BigInt fx = floor_div_sqrt(A, len_sq);
    BigInt fy = floor_div_sqrt(B, len_sq);
    bool x_exact = fx * fx * len_sq == A * A && sgn(fx) * sgn(A) >= 0;
    bool y_exact = fy * fy * len_sq == B * B && sgn(fy) * sgn(B) >= 0;
    if (x_exact && y_exact) return PtI(vpos.x + fx, vpos.y + fy);

    bool u_below = upos.y <= vpos.y;  // y-side rule target
    std::optional<PtI> best;
    std::optional<PtI> best_rel;
    for (BigInt cx : {fx, fx + 1})
        for (BigInt cy : {fy, fy + 1}) {
            PtI cand(vpos.x + cx, vpos.y + cy);
            if ((cand.y <= vpos.y) != u_below) continue;
            PtI rel(cx, cy);
            if (!best) {
                best = cand;
                best_rel = rel;
                continue;
            }
            int cmp = detail::landing_dist_cmp(A, B, len_sq, rel, *best_rel);
            bool better = cmp < 0;
            if (cmp == 0 &&
                (cand.y < best->y || (cand.y == best->y && cand.x < best->x)))
                better = true;
            if (better) {
                best = cand;
                best_rel = rel;
            }
        }
    if (!best) throw std::logic_error("compute_landing_center: no corner satisfies the y-rule");
    return *best;
}

/// Scale the drawing of the (leaf-rooted) tree by B0 and assemble the pipeline
/// state; Lemma 5 guarantees the result is partially canonical, which callers
/// verify with validate_partially_canonical.
inline PartialState scale_to_partially_canonical(const TreePtr& tree, const GridDrawing& g0) {
    if (g0.tree.get() != tree.get())
        throw std::invalid_argument("scale_to_partially_canonical: drawing of a different tree");
    if (!is_planar(g0) || !is_order_preserving(g0))
        throw std::invalid_argument(
            "scale_to_partially_canonical: input must be planar and order-preserving");
    auto [w, h] = bounding_extent(g0);
    PartialState st;
    st.tree = tree;
    st.consts = make_constants(tree->size(), std::max(w, h));

    std::vector<PtI> scaled(tree->size());
    for (int v = 0; v < tree->size(); ++v)
        scaled[v] = PtI(g0.pos[v].x * st.consts.b0, g0.pos[v].y * st.consts.b0);
    st.delta0 = GridDrawing(tree, scaled);
    st.cur = st.delta0;

    int n = tree->size();
    st.visited.assign(n, false);
    for (int v = 0; v < n; ++v) st.visited[v] = tree->is_leaf(v);
    st.sector.resize(n);
    st.landing.assign(n, PtI());
    st.subtree_size.assign(n, 1);
    st.subtree_height.assign(n, BigInt(1));
    for (int v : tree->postorder())
        for (int c : tree->children(v)) {
            st.subtree_size[v] += st.subtree_size[c];
            st.subtree_height[v] = std::max(st.subtree_height[v], st.subtree_height[c] + 1);
        }

    BigInt d4 = st.consts.d0 * st.consts.d0 * st.consts.d0 * st.consts.d0;
    for (int u = 0; u < n; ++u) {
        if (u == tree->root()) continue;
        int v = tree->parent(u);
        Sector s;
        s.parent = v;
        s.child = u;
        s.apex = st.delta0.pos[v];
        s.dir = st.delta0.pos[u] - st.delta0.pos[v];
        s.len_sq = norm_sq(s.dir);
        s.n = n;
        s.d4 = d4;
        st.sector[u] = s;
        st.landing[u] = compute_landing_center(st.consts, st.delta0.pos[v], st.delta0.pos[u]);
    }
    return st;
}

struct StateDiagnostics {
    std::vector<std::string> violations;
    std::vector<std::string> borderline;
    bool ok() const { return violations.empty() && borderline.empty(); }
};

/// Check Definition 2 properties (a)-(d) of the current drawing.
inline StateDiagnostics validate_partially_canonical(const PartialState& st) {
    StateDiagnostics diag;
    const OrderedTree& t = *st.tree;
    int n = t.size();
    auto fail = [&](const std::string& s) { diag.violations.push_back(s); };
    auto edge_in_subtree = [&](int c, int u) {  // edge (c, parent(c)) inside T_u?
        return t.is_ancestor_of(u, c) && c != u;
    };

    // (a) every visited node's subtree drawing is canonical in the right orientation
    for (int u = 0; u < n; ++u) {
        if (!st.visited[u]) continue;
        bool ok = false;
        auto matches = [&](Orientation o) {
            for (const auto& [node, p] : canonical_subtree_positions(t, u, o, st.cur.pos[u]))
                if (st.cur.pos[node] != p) return false;
            return true;
        };
        if (u == t.root()) {
            ok = matches(Orientation::Upward) || matches(Orientation::Downward);
        } else {
            Orientation want = (st.cur.pos[u].y <= st.cur.pos[t.parent(u)].y)
                                   ? Orientation::Upward
                                   : Orientation::Downward;
            ok = matches(want);
        }
        if (!ok) fail("(a): subtree of visited node " + std::to_string(u) + " is not canonical");
    }

    auto edges = st.cur.edges();
    BigInt two_n(2 * st.consts.n);

    // (b) sector properties for each edge whose parent end is unvisited
    for (int u = 0; u < n; ++u) {
        if (u == t.root()) continue;
        int v = t.parent(u);
        if (st.visited[v]) continue;
        const Sector& s = st.sector[u];

        // (b.i) S_e encloses the 2n-box at u
        BoxI su = st.box_around(u, two_n);
        for (const PtI& c : {PtI(su.x0, su.y0), PtI(su.x1, su.y0), PtI(su.x1, su.y1),
                             PtI(su.x0, su.y1)})
            if (!s.contains_point(c))
                fail("(b.i): 2n-box of node " + std::to_string(u) + " not inside its sector");

        // (b.ii) the sector contains nothing foreign
        for (int w = 0; w < n; ++w) {
            if (w == v || t.is_ancestor_of(u, w)) continue;
            if (s.contains_point(st.cur.pos[w]))
                fail("(b.ii): node " + std::to_string(w) + " inside sector of edge (" +
                     std::to_string(v) + "," + std::to_string(u) + ")");
        }
        for (const auto& [c, par] : edges) {
            if (c == u) continue;                  // e itself
            if (edge_in_subtree(c, u)) continue;   // edges of T_u
            if (par == v || c == v) {
                // incident at the apex: must leave the wedge cone immediately
                int other = (par == v) ? c : par;
                PtQ d = to_rat(st.cur.pos[other] - st.cur.pos[v]);
                if (s.dir_in_wedge(d))
                    fail("(b.ii): edge (" + std::to_string(c) + "," + std::to_string(par) +
                         ") enters sector of (" + std::to_string(v) + "," + std::to_string(u) +
                         ") beyond the apex");
                continue;
            }
            HitTest h = s.intersects_segment(st.cur.pos[c], st.cur.pos[par]);
            if (h == HitTest::Yes)
                fail("(b.ii): edge (" + std::to_string(c) + "," + std::to_string(par) +
                     ") intersects sector of (" + std::to_string(v) + "," + std::to_string(u) +
                     ")");
            else if (h == HitTest::Borderline)
                diag.borderline.push_back("(b.ii): borderline sector/segment test for edge (" +
                                          std::to_string(c) + "," + std::to_string(par) + ")");
        }

        // (b.iii) landing box: integer 2n-box inside S_e and M(v), correct y-side
        const PtI& cu = st.landing[u];
        BoxI bu{cu.x - st.consts.n, cu.x + st.consts.n, cu.y - st.consts.n, cu.y + st.consts.n};
        BoxI mv = st.box_around(v, st.consts.medium_box_side());
        if (!(mv.x0 <= bu.x0 && bu.x1 <= mv.x1 && mv.y0 <= bu.y0 && bu.y1 <= mv.y1))
            fail("(b.iii): landing box of " + std::to_string(u) + " leaves M(v)");
        for (const PtI& c : {PtI(bu.x0, bu.y0), PtI(bu.x1, bu.y0), PtI(bu.x1, bu.y1),
                             PtI(bu.x0, bu.y1)})
            if (!s.contains_point(c))
                fail("(b.iii): landing box of " + std::to_string(u) + " not inside its sector");
        if ((cu.y <= st.cur.pos[v].y) != (st.cur.pos[u].y <= st.cur.pos[v].y))
            fail("(b.iii): landing center of " + std::to_string(u) + " on the wrong y-side");

        // (b.iv) sibling sectors are internally disjoint: wedge separation >= 2 alpha
        for (int w : t.children(v)) {
            if (w <= u) continue;  // unordered pairs once
            const Sector& s2 = st.sector[w];
            BigInt dp = dot(s.dir, s2.dir);
            bool disjoint;
            if (dp <= 0) {
                disjoint = true;  // angle >= 90 deg > 2 alpha
            } else {
                // cos(theta) <= cos(2 alpha) = 1 - 2 sin^2(alpha) (> 0 here)
                Rat cos2a = Rat(1) - Rat(2) * st.consts.sin_alpha * st.consts.sin_alpha;
                disjoint = Rat(dp * dp) <= cos2a * cos2a * Rat(s.len_sq * s2.len_sq);
            }
            if (!disjoint)
                fail("(b.iv): sectors of (" + std::to_string(v) + "," + std::to_string(u) +
                     ") and (" + std::to_string(v) + "," + std::to_string(w) + ") overlap");
        }
    }

    // (c) B-boxes of unvisited nodes are pairwise disjoint
    BigInt big = st.consts.big_box_side();
    for (int v = 0; v < n; ++v) {
        if (st.visited[v]) continue;
        for (int w = v + 1; w < n; ++w) {
            if (st.visited[w]) continue;
            BigInt dx = abs(st.cur.pos[v].x - st.cur.pos[w].x);
            BigInt dy = abs(st.cur.pos[v].y - st.cur.pos[w].y);
            if (!(dx > big || dy > big))
                fail("(c): B-boxes of " + std::to_string(v) + " and " + std::to_string(w) +
                     " intersect");
        }
    }

    // (d) B(v) contains no foreign node, edge, or sector
    for (int v = 0; v < n; ++v) {
        if (st.visited[v]) continue;
        BoxI bv = st.box_around(v, big);
        for (int w = 0; w < n; ++w)
            if (w != v && bv.contains(st.cur.pos[w]))
                fail("(d): node " + std::to_string(w) + " inside B(" + std::to_string(v) + ")");
        for (const auto& [c, par] : edges) {
            if (c == v || par == v) continue;
            if (segment_intersects_box(st.cur.pos[c], st.cur.pos[par], bv))
                fail("(d): edge (" + std::to_string(c) + "," + std::to_string(par) +
                     ") intersects B(" + std::to_string(v) + ")");
        }
        for (int u = 0; u < n; ++u) {
            if (u == t.root() || st.visited[t.parent(u)]) continue;
            if (u == v || t.parent(u) == v) continue;  // incident sectors allowed
            HitTest h = st.sector[u].intersects_box(bv);
            if (h == HitTest::Yes)
                fail("(d): sector of (" + std::to_string(t.parent(u)) + "," + std::to_string(u) +
                     ") intersects B(" + std::to_string(v) + ")");
            else if (h == HitTest::Borderline)
                diag.borderline.push_back("(d): borderline sector/box test for B(" +
                                          std::to_string(v) + ")");
        }
    }
    return diag;
}

}  // namespace treemorph
