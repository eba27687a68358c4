#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "treemorph/general_state.hpp"

namespace treemorph {

/// Lemma-4 rotation of a canonical drawing about its root to an adjacent
/// orientation. The input must be exactly the from-oriented canonical drawing;
/// the returned drawing shares the root anchor and the linear step between the
/// two lies in one half of the 2n-box centered at the root.
inline GridDrawing pinwheel_step(const TreePtr& tree, const GridDrawing& canon, Orientation from,
                                 Orientation to) {
    if (to != rotate_ccw(from) && to != rotate_cw(from))
        throw std::invalid_argument("pinwheel_step: orientations are not adjacent");
    PtI anchor = canon.pos[tree->root()];
    GridDrawing expect = canonical_drawing(tree, from, anchor);
    if (expect.pos != canon.pos)
        throw std::invalid_argument("pinwheel_step: input is not the from-oriented canonical drawing");
    return canonical_drawing(tree, to, anchor);
}

/// The half of the 2n-box (as a box) that the pinwheel morph between the two
/// adjacent orientations stays in: right, top, left, bottom for the pairs
/// (up,left), (left,down), (down,right), (right,up) in either direction.
inline BoxI pinwheel_half_box(const PtI& root, int n, Orientation a, Orientation b) {
    if (rotate_ccw(b) == a) std::swap(a, b);
    if (rotate_ccw(a) != b) throw std::invalid_argument("pinwheel_half_box: not adjacent");
    BigInt N(n);
    switch (a) {
        case Orientation::Upward:   // up-left: right half
            return BoxI{root.x, root.x + N, root.y - N, root.y + N};
        case Orientation::Leftward: // left-down: top half
            return BoxI{root.x - N, root.x + N, root.y, root.y + N};
        case Orientation::Downward: // down-right: left half
            return BoxI{root.x - N, root.x, root.y - N, root.y + N};
        case Orientation::Rightward: // right-up: bottom half
            return BoxI{root.x - N, root.x + N, root.y - N, root.y};
    }
    return BoxI{};
}

namespace detail {

struct ChildInfo {
    int node = -1;
    PtI psi_c;          // landing center in the normalized frame
    Orientation orient; // real orientation entering the visit
};

/// Processing-order comparators on normalized landing directions (see the region
/// analysis): R2 clockwise from the rightward ray, R1 counter-clockwise from the
/// rightward ray, R3 and R4 clockwise from the leftward/upward side.
inline bool r2_before(const PtI& a, const PtI& b) {
    auto cls = [](const PtI& d) {
        if (d.y == 0) return d.x > 0 ? 2 : 0;
        return 1;
    };
    int ca = cls(a), cb = cls(b);
    if (ca != cb) return ca > cb;
    return cross(a, b) < 0;  // larger angle first within the open lower half
}

inline bool r1_before(const PtI& a, const PtI& b) {
    auto cls = [](const PtI& d) { return (d.y == 0 && d.x > 0) ? 0 : 1; };
    int ca = cls(a), cb = cls(b);
    if (ca != cb) return ca < cb;
    return cross(a, b) > 0;  // ascending angle within the open upper half
}

inline bool r3_before(const PtI& a, const PtI& b) {
    auto cls = [](const PtI& d) { return (d.y == 0 && d.x < 0) ? 0 : 1; };
    int ca = cls(a), cb = cls(b);
    if (ca != cb) return ca < cb;
    return cross(a, b) < 0;  // descending angle within the open upper half
}

inline bool r4_before(const PtI& a, const PtI& b) { return cross(a, b) < 0; }

/// x-extent of the canonical bbox relative to the root anchor.
inline std::pair<BigInt, BigInt> bbox_x_offsets(Orientation o, const BigInt& w, const BigInt& h) {
    BoxI b = canonical_bbox(PtI(BigInt(0), BigInt(0)), w, h, o);
    return {b.x0, b.x1};  // left and right offsets
}

}  // namespace detail

/// One bottom-up visit of Lemma 7: relocate the subtrees rooted at the children of
/// v so that T_v becomes canonical at v's (unchanged) position. Emits the morph
/// keyframes after the current drawing; each appended step is certified exactly and
/// the mutated state satisfies Definition 2 again (checked by the caller).
inline std::vector<GridDrawing> visit_morph(PartialState& st, int v) {
    const OrderedTree& t = *st.tree;
    int n = st.n();
    if (st.visited[v]) throw std::invalid_argument("visit_morph: node already visited");
    for (int c : t.children(v))
        if (!st.visited[c]) throw std::invalid_argument("visit_morph: child not yet visited");
    if (t.is_leaf(v)) throw std::invalid_argument("visit_morph: leaf nodes start visited");

    const PtI vp = st.cur.pos[v];
    if (vp != st.delta0.pos[v])
        throw std::logic_error("visit_morph: unvisited node moved before its visit");

    int sx = 1, sy = 1;
    if (v != t.root()) {
        const PtI& pp = st.cur.pos[t.parent(v)];
        sx = (pp.x >= vp.x) ? 1 : -1;
        sy = (pp.y >= vp.y) ? 1 : -1;
    }
    auto psi = [&](const PtI& q) { return PtI(BigInt(sx) * (q.x - vp.x), BigInt(sy) * (q.y - vp.y)); };

    const Orientation norm_up = (sy == 1) ? Orientation::Upward : Orientation::Downward;
    const Orientation norm_down = (sy == 1) ? Orientation::Downward : Orientation::Upward;
    const BigInt lb = st.consts.big_box_side() / 2;     // half side of B(v)
    const BigInt lm = st.consts.medium_box_side() / 2;  // half side of M(v)

    std::vector<GridDrawing> out;
    auto emit = [&](std::vector<PtI> pos) {
        GridDrawing next(st.tree, std::move(pos));
        StepCertificate cert = verify_linear_step(st.cur, next, false);
        if (!cert.planar)
            throw std::logic_error("visit_morph: emitted step is not planar: " +
                                   cert.first_violation->describe());
        st.cur = next;
        out.push_back(st.cur);
    };
    auto with_subtree_at = [&](std::vector<PtI> pos, int u, Orientation o, const PtI& anchor) {
        for (const auto& [node, p] : canonical_subtree_positions(t, u, o, anchor)) pos[node] = p;
        return pos;
    };

    // entering state: every child subtree sits canonically at its Delta_0 spot
    for (int u : t.children(v)) {
        Orientation o = st.entry_orientation(u);
        for (const auto& [node, p] : canonical_subtree_positions(t, u, o, st.cur.pos[u]))
            if (st.cur.pos[node] != p)
                throw std::logic_error("visit_morph: child subtree not canonical on entry");
    }

    // Delta': one step translating every child subtree into its landing box
    {
        std::vector<PtI> pos = st.cur.pos;
        for (int u : t.children(v))
            pos = with_subtree_at(std::move(pos), u, st.entry_orientation(u), st.landing[u]);
        emit(std::move(pos));
    }

    // classify children by their normalized landing directions
    std::vector<detail::ChildInfo> r1, r2, r3, r4;
    const PtI psi_parent = (v == t.root()) ? PtI() : psi(st.cur.pos[t.parent(v)]);
    for (int u : t.children(v)) {
        detail::ChildInfo ci{u, psi(st.landing[u]), st.entry_orientation(u)};
        bool norm_upward = (ci.orient == norm_up);
        if (ci.psi_c.y < 0 || (ci.psi_c.y == 0 && norm_upward)) {
            r2.push_back(ci);
        } else if (ci.psi_c.y == 0) {
            (ci.psi_c.x > 0 ? r1 : r3).push_back(ci);
        } else if (v == t.root()) {
            (ci.psi_c.x > 0 ? r1 : r3).push_back(ci);
        } else {
            BigInt cr = cross(psi_parent, ci.psi_c);
            if (cr == 0)
                throw std::logic_error("visit_morph: child landing on the parent ray");
            if (cr < 0)
                r1.push_back(ci);
            else
                (ci.psi_c.x > 0 ? r4 : r3).push_back(ci);
        }
    }
    auto by = [](auto cmp) {
        return [cmp](const detail::ChildInfo& a, const detail::ChildInfo& b) {
            return cmp(a.psi_c, b.psi_c);
        };
    };
    std::sort(r2.begin(), r2.end(), by(detail::r2_before));
    std::sort(r1.begin(), r1.end(), by(detail::r1_before));
    std::sort(r3.begin(), r3.end(), by(detail::r3_before));
    std::sort(r4.begin(), r4.end(), by(detail::r4_before));

    // final slots: T_v canonical at v, oriented away from the parent side
    GridDrawing target = canonical_drawing(st.tree, norm_up, vp);

    auto anchor_for_bbox_right = [&](int u, Orientation o, const BigInt& right) {
        auto [lo, hi] = detail::bbox_x_offsets(o, BigInt(st.subtree_size[u]), st.subtree_height[u]);
        return right - hi;
    };
    auto anchor_for_bbox_left = [&](int u, Orientation o, const BigInt& left) {
        auto [lo, hi] = detail::bbox_x_offsets(o, BigInt(st.subtree_size[u]), st.subtree_height[u]);
        return left - lo;
    };
    auto bbox_at = [&](int u, Orientation o, const PtI& anchor) {
        return canonical_bbox(anchor, BigInt(st.subtree_size[u]), st.subtree_height[u], o);
    };

    // R2: park the subtrees side by side against the sx-side of B(v), one unit
    // below v (normalized), then slide them all horizontally to their slots
    {
        const BigInt y_park = vp.y - sy;
        std::optional<BoxI> prev_bbox;
        for (const auto& ci : r2) {
            if (ci.orient != norm_up) throw std::logic_error("visit_morph: R2 orientation");
            BigInt ax;
            if (!prev_bbox) {
                ax = (sx == 1) ? anchor_for_bbox_right(ci.node, ci.orient, vp.x + lb)
                               : anchor_for_bbox_left(ci.node, ci.orient, vp.x - lb);
            } else {
                ax = (sx == 1) ? anchor_for_bbox_right(ci.node, ci.orient, prev_bbox->x0 - 1)
                               : anchor_for_bbox_left(ci.node, ci.orient, prev_bbox->x1 + 1);
            }
            PtI park(ax, y_park);
            emit(with_subtree_at(st.cur.pos, ci.node, ci.orient, park));
            prev_bbox = bbox_at(ci.node, ci.orient, park);
        }
        if (!r2.empty()) {
            std::vector<PtI> pos = st.cur.pos;
            for (const auto& ci : r2) {
                if (target.pos[ci.node].y != y_park)
                    throw std::logic_error("visit_morph: R2 slot is not at the parking level");
                pos = with_subtree_at(std::move(pos), ci.node, ci.orient, target.pos[ci.node]);
            }
            emit(std::move(pos));
        }
    }

    // R1 / R3 / R4: two pinwheels around a parking trip; R4 children first slide
    // horizontally into the R3 side
    auto process_rotating = [&](const detail::ChildInfo& ci, bool r3_side, bool slide_first) {
        int u = ci.node;
        if (ci.orient != norm_down) throw std::logic_error("visit_morph: rotating-group orientation");
        bool cw = (r3_side ? (sx * sy == -1) : (sx * sy == 1));
        auto rot = [&](Orientation o) { return cw ? rotate_cw(o) : rotate_ccw(o); };
        Orientation o_mid = rot(ci.orient);
        Orientation o_fin = rot(o_mid);
        if (o_fin != norm_up) throw std::logic_error("visit_morph: rotation does not end upward");

        PtI anchor = st.cur.pos[u];
        if (slide_first) {
            BigInt ax = (sx == 1) ? anchor_for_bbox_right(u, ci.orient, vp.x - 1)
                                  : anchor_for_bbox_left(u, ci.orient, vp.x + 1);
            anchor = PtI(ax, anchor.y);
            emit(with_subtree_at(st.cur.pos, u, ci.orient, anchor));
        }
        emit(with_subtree_at(st.cur.pos, u, o_mid, anchor));  // pinwheel in place
        BigInt park_x = r3_side ? vp.x - BigInt(sx) * (lm + n) : vp.x + BigInt(sx) * (lm + n);
        PtI park(park_x, vp.y - sy);
        emit(with_subtree_at(st.cur.pos, u, o_mid, park));
        emit(with_subtree_at(st.cur.pos, u, o_fin, park));    // pinwheel at the parking spot
        emit(with_subtree_at(st.cur.pos, u, o_fin, target.pos[u]));
    };

    for (const auto& ci : r1) process_rotating(ci, false, false);
    for (const auto& ci : r3) process_rotating(ci, true, false);
    for (const auto& ci : r4) process_rotating(ci, true, true);

    // the drawing now equals Delta_i: T_v canonical, everything else untouched
    for (const auto& [node, p] :
         canonical_subtree_positions(t, v, norm_up, vp))
        if (st.cur.pos[node] != p)
            throw std::logic_error("visit_morph: final drawing is not canonical at the visited node");
    st.visited[v] = true;

    int deg = t.degree(v);
    if (static_cast<int>(out.size()) > 5 * deg + 2)
        throw std::logic_error("visit_morph: step budget 5*deg+2 exceeded");
    return out;
}

struct GeneralPipeline {
    PartialState state;
    std::vector<GridDrawing> keyframes;  // starting at the input drawing
    int steps_pre_collapse = 0;
};

/// Run the scaling step plus every bottom-up visit, validating Definition 2 after
/// each visit (Lemma 6) and checking the Lemma 7 extent bound on every keyframe.
inline GeneralPipeline run_canonicalization_pipeline(const TreePtr& rerooted,
                                                     const GridDrawing& g) {
    GeneralPipeline pipe;
    pipe.state = scale_to_partially_canonical(rerooted, g);
    PartialState& st = pipe.state;

    auto d0_diag = validate_partially_canonical(st);
    if (!d0_diag.ok())
        throw std::logic_error("general morph: scaled drawing is not partially canonical: " +
                               (d0_diag.violations.empty() ? d0_diag.borderline.front()
                                                           : d0_diag.violations.front()));

    pipe.keyframes.push_back(g);
    StepCertificate scale_cert = verify_linear_step(g, st.delta0, false);
    if (!scale_cert.planar) throw std::logic_error("general morph: scaling step not planar");
    pipe.keyframes.push_back(st.delta0);
    pipe.steps_pre_collapse = 1;

    BoxI d0_box = bounding_box(st.delta0);
    BigInt half = st.consts.big_box_side() / 2;
    BoxI bound{d0_box.x0 - half, d0_box.x1 + half, d0_box.y0 - half, d0_box.y1 + half};

    for (int v : postorder_internal(*rerooted)) {
        std::vector<GridDrawing> kfs = visit_morph(st, v);
        pipe.steps_pre_collapse += static_cast<int>(kfs.size());
        for (auto& kf : kfs) {
            BoxI kb = bounding_box(kf);
            if (!(bound.x0 <= kb.x0 && kb.x1 <= bound.x1 && bound.y0 <= kb.y0 &&
                  kb.y1 <= bound.y1))
                throw std::logic_error("general morph: keyframe leaves the Lemma 7 extent bound");
            pipe.keyframes.push_back(std::move(kf));
        }
        auto diag = validate_partially_canonical(st);
        if (!diag.ok())
            throw std::logic_error(
                "general morph: state after visiting " + std::to_string(v) +
                " is not partially canonical: " +
                (diag.violations.empty() ? diag.borderline.front() : diag.violations.front()));
    }
    return pipe;
}

/// Theorem 3: O(n)-step planar morph between two order-preserving planar grid
/// drawings of the same ordered tree. Both drawings are canonicalized bottom-up
/// after rerooting at the smallest-index leaf; the two terminal drawings are the
/// same upward canonical drawing up to translation, so the middle morph is a
/// single translation step.
inline Morph morph_general(const TreePtr& tree, const GridDrawing& g0, const GridDrawing& g1) {
    if (g0.tree.get() != tree.get() || g1.tree.get() != tree.get())
        throw std::invalid_argument("morph_general: drawings of a different tree");
    for (const GridDrawing* g : {&g0, &g1})
        if (!is_planar(*g) || !is_order_preserving(*g))
            throw std::invalid_argument(
                "morph_general: inputs must be planar and order-preserving");

    TreePtr rt = reroot_at_leaf(tree);
    GridDrawing h0(rt, g0.pos), h1(rt, g1.pos);

    GeneralPipeline p0 = run_canonicalization_pipeline(rt, h0);
    GeneralPipeline p1 = run_canonicalization_pipeline(rt, h1);

    const GridDrawing& e0 = p0.keyframes.back();
    const GridDrawing& e1 = p1.keyframes.back();
    PtI delta = e1.pos[rt->root()] - e0.pos[rt->root()];
    for (int v = 0; v < rt->size(); ++v)
        if (e1.pos[v] - e0.pos[v] != delta)
            throw std::logic_error("morph_general: terminal canonical drawings differ beyond a translation");
    if (!verify_linear_step(e0, e1, false).planar)
        throw std::logic_error("morph_general: middle translation step not planar");

    Morph m(tree, {g0});
    for (std::size_t i = 1; i < p0.keyframes.size(); ++i)
        m.append(GridDrawing(tree, p0.keyframes[i].pos));
    m.append(GridDrawing(tree, e1.pos));  // the single middle translation step
    for (std::size_t i = p1.keyframes.size(); i-- > 0;)
        m.append(GridDrawing(tree, p1.keyframes[i].pos));
    return m;
}

}  // namespace treemorph
