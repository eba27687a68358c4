#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treemorph/drawing.hpp"
#include "treemorph/quadratics.hpp"

namespace treemorph {

/// Keyframe sequence over one tree; adjacent keyframes are linear morphing steps.
struct Morph {
    TreePtr tree;
    std::vector<GridDrawing> keyframes;

    Morph() = default;
    Morph(TreePtr t, std::vector<GridDrawing> kf) : tree(std::move(t)), keyframes(std::move(kf)) {
        for (const auto& g : keyframes)
            if (g.tree.get() != tree.get())
                throw std::invalid_argument("Morph: keyframe references a different tree");
        if (keyframes.empty()) throw std::invalid_argument("Morph: at least one keyframe required");
    }

    int steps() const { return static_cast<int>(keyframes.size()) - 1; }

    void append(GridDrawing g, bool collapse_null = true) {
        if (g.tree.get() != tree.get())
            throw std::invalid_argument("Morph::append: keyframe references a different tree");
        if (collapse_null && !keyframes.empty() && keyframes.back().pos == g.pos) return;
        keyframes.push_back(std::move(g));
    }
};

struct StepViolation {
    enum class Kind { VertexVertex, VertexEdge } kind;
    int vertex = -1;
    int other = -1;       // second vertex, or edge child endpoint
    int edge_parent = -1; // parent endpoint for VertexEdge
    Rat t_lo, t_hi;       // isolating rational interval for the collision time
    bool t_exact = false; // t_lo == t_hi is the exact rational time
    std::string describe() const {
        if (kind == Kind::VertexVertex)
            return "vertices " + std::to_string(vertex) + " and " + std::to_string(other) +
                   " coincide in t-interval [" + t_lo.get_str() + "," + t_hi.get_str() + "]";
        return "vertex " + std::to_string(vertex) + " meets edge (" + std::to_string(other) + "," +
               std::to_string(edge_parent) + ") in t-interval [" + t_lo.get_str() + "," +
               t_hi.get_str() + "]";
    }
};

struct StepCertificate {
    bool planar = false;
    bool upward = false;
    std::optional<StepViolation> first_violation;
};

namespace detail {

struct MovingDrawingPair {
    const GridDrawing& a;
    const GridDrawing& b;
    PtI p0(int v) const { return a.pos[v]; }
    PtI d(int v) const { return b.pos[v] - a.pos[v]; }
};

}  // namespace detail

/// Exact planarity decision for the linear morph <ga, gb> over t in [0,1].
/// Preconditions: same tree, both endpoint drawings planar (and strictly upward
/// when require_upward is set). With planar endpoints, the first violation of the
/// open interval is a vertex-vertex coincidence or a vertex crossing a non-incident
/// edge; vertex-vertex events are scanned first, which also covers every shared-root
/// degeneracy of the vertex-edge quadratics.
inline StepCertificate verify_linear_step(const GridDrawing& ga, const GridDrawing& gb,
                                          bool require_upward = false) {
    if (ga.tree.get() != gb.tree.get())
        throw std::invalid_argument("verify_linear_step: drawings of different trees");
    if (planarity_violation(ga) || planarity_violation(gb))
        throw std::invalid_argument("verify_linear_step: endpoint drawing is not planar");
    if (require_upward && (!is_strictly_upward(ga) || !is_strictly_upward(gb)))
        throw std::invalid_argument("verify_linear_step: endpoint drawing is not strictly upward");

    const OrderedTree& tree = *ga.tree;
    int n = tree.size();
    detail::MovingDrawingPair m{ga, gb};

    StepCertificate cert;
    cert.upward = require_upward;  // both endpoints upward => whole step upward (Observation 1)

    // vertex-vertex coincidences (includes adjacent pairs)
    for (int u = 0; u < n && !cert.first_violation; ++u)
        for (int w = u + 1; w < n; ++w) {
            PtI du = m.d(u), dw = m.d(w), pu = m.p0(u), pw = m.p0(w);
            LinPoly fx{du.x - dw.x, pu.x - pw.x};
            LinPoly fy{du.y - dw.y, pu.y - pw.y};
            if (auto t = common_linear_root_01(fx, fy)) {
                cert.first_violation =
                    StepViolation{StepViolation::Kind::VertexVertex, u, w, -1, *t, *t, true};
                break;
            }
        }

    if (!cert.first_violation) {
        // vertex vs non-incident edge: collision iff the collinearity quadratic C
        // vanishes at some t in (0,1) where 0 < E < F (strict: boundary touches are
        // vertex-vertex events, already excluded; C identically zero likewise)
        for (int p = 0; p < n && !cert.first_violation; ++p) {
            for (int c = 0; c < n; ++c) {
                if (c == tree.root() || c == p) continue;
                int par = tree.parent(c);
                if (par == p) continue;
                PtI a0 = m.p0(c), da = m.d(c);
                PtI b0 = m.p0(par), db = m.d(par);
                PtI e0 = b0 - a0, de = db - da;          // edge vector
                PtI f0 = m.p0(p) - a0, df = m.d(p) - da; // vertex relative to edge start
                QuadPoly C = cross_poly(e0, de, f0, df);
                if (C.is_zero()) continue;
                QuadPoly E = dot_poly(f0, df, e0, de);
                QuadPoly F = dot_poly(e0, de, e0, de);
                QuadPoly FmE = F - E;
                for (const QuadExtNumber& tau : real_roots(C)) {
                    if (!tau.in_open_01()) continue;
                    if (tau.sign_of_quad(E) > 0 && tau.sign_of_quad(FmE) > 0) {
                        auto [lo, hi] = tau.enclosure();
                        cert.first_violation = StepViolation{StepViolation::Kind::VertexEdge, p,
                                                             c, par, lo, hi, lo == hi};
                        break;
                    }
                }
                if (cert.first_violation) break;
            }
        }
    }

    cert.planar = !cert.first_violation.has_value();
    return cert;
}

enum class MorphStandard { Planar, UpwardPlanar };

struct KeyframeCheck {
    bool planar = false;
    bool upward = false;           // only evaluated for UpwardPlanar
    bool order_preserving = false; // likewise
    bool ok(MorphStandard s) const {
        return planar && (s == MorphStandard::Planar || (upward && order_preserving));
    }
};

struct MorphReport {
    MorphStandard standard = MorphStandard::Planar;
    int steps = 0;
    BigInt width, height;
    std::vector<KeyframeCheck> keyframes;
    std::vector<StepCertificate> step_certs;

    bool all_green() const {
        for (const auto& k : keyframes)
            if (!k.ok(standard)) return false;
        for (const auto& c : step_certs) {
            if (!c.planar) return false;
            if (standard == MorphStandard::UpwardPlanar && !c.upward) return false;
        }
        return true;
    }

    std::optional<int> first_bad_step() const {
        for (std::size_t i = 0; i < step_certs.size(); ++i)
            if (!step_certs[i].planar) return static_cast<int>(i);
        return std::nullopt;
    }
};

/// Check every keyframe against the drawing standard and certify every step exactly.
inline MorphReport verify_morph(const Morph& m, MorphStandard standard) {
    MorphReport rep;
    rep.standard = standard;
    rep.steps = m.steps();
    rep.width = 0;
    rep.height = 0;
    for (const auto& g : m.keyframes) {
        auto [w, h] = bounding_extent(g);
        rep.width = std::max(rep.width, w);
        rep.height = std::max(rep.height, h);
        KeyframeCheck kc;
        kc.planar = is_planar(g);
        if (standard == MorphStandard::UpwardPlanar) {
            kc.upward = is_strictly_upward(g);
            kc.order_preserving = kc.planar && is_order_preserving(g);
        }
        rep.keyframes.push_back(kc);
    }
    for (int i = 0; i < rep.steps; ++i) {
        if (!rep.keyframes[i].planar || !rep.keyframes[i + 1].planar) {
            // cannot certify a step with a non-planar endpoint; mark failed
            StepCertificate cert;
            cert.planar = false;
            rep.step_certs.push_back(cert);
            continue;
        }
        bool up = standard == MorphStandard::UpwardPlanar && rep.keyframes[i].upward &&
                  rep.keyframes[i + 1].upward;
        StepCertificate cert = verify_linear_step(m.keyframes[i], m.keyframes[i + 1], false);
        cert.upward = up;
        rep.step_certs.push_back(cert);
    }
    return rep;
}

/// All y-coordinates equal between the two drawings (Lemma 2 precondition).
inline bool is_unidirectional_equal_y(const GridDrawing& ga, const GridDrawing& gb) {
    if (ga.tree.get() != gb.tree.get())
        throw std::invalid_argument("is_unidirectional_equal_y: drawings of different trees");
    for (int v = 0; v < ga.size(); ++v)
        if (ga.pos[v].y != gb.pos[v].y) return false;
    return true;
}

namespace detail {

/// max over vertex pairs of squared distance at rational time t.
inline Rat max_pair_dist_sq_at(const GridDrawing& a, const GridDrawing& b, const Rat& t) {
    int n = a.size();
    Rat best(0);
    std::vector<PtQ> at(n);
    for (int v = 0; v < n; ++v) at[v] = MovingPoint::between(a.pos[v], b.pos[v]).at(t);
    for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w) best = std::max(best, norm_sq(at[u] - at[w]));
    return best;
}

inline Rat min_pair_dist_sq_at(const GridDrawing& a, const GridDrawing& b, const Rat& t) {
    const OrderedTree& tree = *a.tree;
    int n = a.size();
    std::vector<PtQ> at(n);
    for (int v = 0; v < n; ++v) at[v] = MovingPoint::between(a.pos[v], b.pos[v]).at(t);
    std::optional<Rat> best;
    auto upd = [&](const Rat& v) {
        if (!best || v < *best) best = v;
    };
    for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w) upd(norm_sq(at[u] - at[w]));
    for (int p = 0; p < n; ++p)
        for (int c = 0; c < n; ++c) {
            if (c == tree.root() || c == p || tree.parent(c) == p) continue;
            upd(point_segment_dist_sq(at[p], at[c], at[tree.parent(c)]));
        }
    return best.value_or(Rat(1));
}

}  // namespace detail

/// Estimate of the maximum squared resolution over the morph. Per-sample ratios are
/// exact; vertex-vertex dips between samples are captured exactly via the closed-form
/// minimum of the squared-distance quadratic; vertex-edge minima are sampled only,
/// so the estimate is one-sided: true max resolution >= returned value.
inline Rat morph_resolution_estimate_sq(const Morph& m, int samples_per_step) {
    if (samples_per_step < 2)
        throw std::invalid_argument("morph_resolution_estimate_sq: need >= 2 samples per step");
    int n = m.tree->size();
    if (n < 2) return Rat(1);
    Rat best(0);
    for (int s = 0; s < m.steps() || (m.steps() == 0 && s == 0); ++s) {
        const GridDrawing& a = m.keyframes[s];
        const GridDrawing& b = m.keyframes[std::min<std::size_t>(s + 1, m.keyframes.size() - 1)];
        for (int i = 0; i < samples_per_step; ++i) {
            Rat t(i, samples_per_step - 1);
            t.canonicalize();
            Rat ratio = Rat(detail::max_pair_dist_sq_at(a, b, t)) /
                        detail::min_pair_dist_sq_at(a, b, t);
            if (ratio > best) best = ratio;
        }
        // exact vertex-vertex minima over the step
        for (int u = 0; u < n; ++u)
            for (int w = u + 1; w < n; ++w) {
                PtI p0 = a.pos[u] - a.pos[w];
                PtI d = (b.pos[u] - b.pos[w]) - p0;
                QuadPoly q = dot_poly(p0, d, p0, d);  // squared distance, quadratic in t
                Rat tm(0);
                if (q.a > 0) {
                    tm = Rat(-q.b) / Rat(2 * q.a);
                    if (tm < 0) tm = 0;
                    if (tm > 1) tm = 1;
                }
                Rat dm = q.eval(tm);
                if (dm == 0)
                    throw std::invalid_argument(
                        "morph_resolution_estimate_sq: vertices collide (morph not planar)");
                Rat ratio = Rat(detail::max_pair_dist_sq_at(a, b, tm)) / dm;
                if (ratio > best) best = ratio;
            }
    }
    return best;
}

}  // namespace treemorph
