#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "treemorph/morph.hpp"

namespace treemorph {

/// Straight-line drawing with exact rational coordinates.
struct RealDrawing {
    TreePtr tree;
    std::vector<PtQ> pos;

    RealDrawing() = default;
    RealDrawing(TreePtr t, std::vector<PtQ> p) : tree(std::move(t)), pos(std::move(p)) {
        if (static_cast<int>(pos.size()) != tree->size())
            throw std::invalid_argument("RealDrawing: one position per node required");
    }
    int size() const { return tree->size(); }
};

inline RealDrawing to_real(const GridDrawing& g) {
    std::vector<PtQ> pos(g.size());
    for (int v = 0; v < g.size(); ++v) pos[v] = to_rat(g.pos[v]);
    return RealDrawing(g.tree, std::move(pos));
}

/// Scale all coordinates by a common factor so they become integers.
/// Planarity of drawings and of linear morphs is invariant under uniform scaling.
inline GridDrawing scaled_to_grid(const RealDrawing& d, const BigInt& common_den) {
    std::vector<PtI> pos(d.size());
    for (int v = 0; v < d.size(); ++v) {
        Rat x = d.pos[v].x * Rat(common_den);
        Rat y = d.pos[v].y * Rat(common_den);
        if (x.get_den() != 1 || y.get_den() != 1)
            throw std::invalid_argument("scaled_to_grid: common_den is not a common denominator");
        pos[v] = PtI(x.get_num(), y.get_num());
    }
    return GridDrawing(d.tree, std::move(pos));
}

inline BigInt common_denominator(const std::vector<const RealDrawing*>& ds) {
    BigInt l = 1;
    for (const auto* d : ds)
        for (const auto& p : d->pos) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.x.get_den().get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.y.get_den().get_mpz_t());
        }
    return l;
}

inline bool is_planar(const RealDrawing& d) {
    return !planarity_violation(*d.tree, d.pos).has_value();
}

/// Exact certificate for the linear morph between two rational-coordinate drawings
/// (uniform common-denominator scaling reduces to the integer verifier).
inline StepCertificate verify_linear_step_real(const RealDrawing& a, const RealDrawing& b) {
    BigInt den = common_denominator({&a, &b});
    return verify_linear_step(scaled_to_grid(a, den), scaled_to_grid(b, den), false);
}

/// Squared resolution of a drawing: (max vertex pair distance)^2 over
/// (min distance among vertex pairs and vertex/non-incident-edge pairs)^2.
inline Rat drawing_resolution_sq(const RealDrawing& d) {
    const OrderedTree& t = *d.tree;
    int n = d.size();
    if (n < 2) return Rat(1);
    Rat maxsq(0);
    std::optional<Rat> minsq;
    auto upd_min = [&](const Rat& v) {
        if (!minsq || v < *minsq) minsq = v;
    };
    for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w) {
            Rat dd = norm_sq(d.pos[u] - d.pos[w]);
            maxsq = std::max(maxsq, dd);
            upd_min(dd);
        }
    for (int p = 0; p < n; ++p)
        for (int c = 0; c < n; ++c) {
            if (c == t.root() || c == p || t.parent(c) == p) continue;
            upd_min(point_segment_dist_sq(d.pos[p], d.pos[c], d.pos[t.parent(c)]));
        }
    if (*minsq == 0) throw std::invalid_argument("drawing_resolution_sq: coincident objects");
    return maxsq / *minsq;
}

inline Rat drawing_resolution_sq(const GridDrawing& g) { return drawing_resolution_sq(to_real(g)); }

/// Minimum squared distance among all object pairs (vertex-vertex and
/// vertex/non-incident-edge) of a drawing.
inline Rat min_object_dist_sq(const RealDrawing& d) {
    const OrderedTree& t = *d.tree;
    int n = d.size();
    if (n < 2) return Rat(1);
    std::optional<Rat> minsq;
    auto upd = [&](const Rat& v) {
        if (!minsq || v < *minsq) minsq = v;
    };
    for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w) upd(norm_sq(d.pos[u] - d.pos[w]));
    for (int p = 0; p < n; ++p)
        for (int c = 0; c < n; ++c) {
            if (c == t.root() || c == p || t.parent(c) == p) continue;
            upd(point_segment_dist_sq(d.pos[p], d.pos[c], d.pos[t.parent(c)]));
        }
    return *minsq;
}

struct SnapMorph {
    std::vector<RealDrawing> keyframes;  // <Gamma, Gamma', Gamma''>, last one integral
    Rat scale;                            // the factor taking Gamma to Gamma'
    BigInt grid_side;                     // occupied grid side of Gamma''
    GridDrawing grid_result() const {
        std::vector<PtI> pos(keyframes.back().size());
        for (int v = 0; v < keyframes.back().size(); ++v) {
            const PtQ& p = keyframes.back().pos[v];
            pos[v] = PtI(p.x.get_num(), p.y.get_num());
        }
        return GridDrawing(keyframes.back().tree, std::move(pos));
    }
};

/// Lemma-10 style 2-step morph: scale so the minimum object distance is at least 2
/// (rational upper approximation of the exact irrational factor, exact when the
/// minimum distance is rational), then snap every node to the nearest grid point,
/// ties rounded toward -infinity per coordinate.
inline SnapMorph snap_to_grid_morph(const RealDrawing& g) {
    if (!is_planar(g)) throw std::invalid_argument("snap_to_grid_morph: input is not planar");
    int n = g.size();

    SnapMorph out;
    Rat dmin_sq = min_object_dist_sq(g);
    if (n >= 2 && dmin_sq == 0)
        throw std::invalid_argument("snap_to_grid_morph: degenerate drawing");
    // sigma >= 2/dmin with sigma^2 >= 4/dmin^2, tight within 2^-32
    Rat sigma = (n < 2) ? Rat(1) : sqrt_upper(Rat(4) / dmin_sq, 32);
    out.scale = sigma;

    std::vector<PtQ> prime(n);
    for (int v = 0; v < n; ++v) prime[v] = PtQ(sigma * g.pos[v].x, sigma * g.pos[v].y);
    RealDrawing gp(g.tree, prime);

    auto snap = [](const Rat& q) {
        BigInt f = rat_floor(q);
        Rat frac = q - Rat(f);
        return (frac > Rat(1, 2)) ? f + 1 : f;  // ties toward -infinity
    };
    std::vector<PtQ> snapped(n);
    for (int v = 0; v < n; ++v)
        snapped[v] = PtQ(Rat(snap(gp.pos[v].x)), Rat(snap(gp.pos[v].y)));
    RealDrawing gpp(g.tree, snapped);

    BigInt minx = snapped[0].x.get_num(), maxx = minx;
    BigInt miny = snapped[0].y.get_num(), maxy = miny;
    for (const auto& p : snapped) {
        minx = std::min(minx, p.x.get_num());
        maxx = std::max(maxx, p.x.get_num());
        miny = std::min(miny, p.y.get_num());
        maxy = std::max(maxy, p.y.get_num());
    }
    out.grid_side = std::max(maxx - minx, maxy - miny) + 1;
    out.keyframes = {g, std::move(gp), std::move(gpp)};
    return out;
}

}  // namespace treemorph
