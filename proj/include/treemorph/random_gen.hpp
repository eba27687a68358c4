#pragma once

#include <cstdint>
#include <random>
#include <tuple>

#include "treemorph/drawing.hpp"
#include "treemorph/morph.hpp"

namespace treemorph {

/// Deterministic RNG wrapper: mt19937_64 stream with portable bounded draws
/// (std::uniform_int_distribution is not bit-stable across standard libraries).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    /// uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(int num, int den) {
        return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num);
    }

  private:
    std::mt19937_64 eng_;
};

/// Random ordered tree on n nodes; optional max child count.
inline TreePtr random_tree(Rng& rng, int n, int max_children = -1) {
    if (n < 1) throw std::invalid_argument("random_tree: n >= 1 required");
    std::vector<int> parent(n, -1);
    std::vector<std::vector<int>> children(n);
    std::vector<int> eligible{0};
    for (int v = 1; v < n; ++v) {
        int p = eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
        parent[v] = p;
        auto& cs = children[p];
        cs.insert(cs.begin() + rng.range(0, static_cast<int>(cs.size())), v);
        if (max_children > 0 && static_cast<int>(cs.size()) >= max_children) {
            for (std::size_t i = 0; i < eligible.size(); ++i)
                if (eligible[i] == p) {
                    eligible.erase(eligible.begin() + i);
                    break;
                }
        }
        eligible.push_back(v);
    }
    return std::make_shared<OrderedTree>(0, std::move(parent), std::move(children));
}

/// Random order-preserving strictly-upward planar grid drawing with coordinates in
/// [0, coord_cap] x [-coord_cap, 0]. Children of a node share one depth step and
/// occupy disjoint x-slabs in child order, which makes the layout valid by
/// construction; it is validated anyway and retried, with a canonical fallback.
inline GridDrawing random_upward_drawing(Rng& rng, const TreePtr& tree, int coord_cap = 12) {
    const OrderedTree& t = *tree;
    int n = t.size();
    std::vector<int> lev(n, 0);  // levels below each node
    for (int v : t.postorder())
        for (int c : t.children(v)) lev[v] = std::max(lev[v], lev[c] + 1);

    for (int attempt = 0; attempt < 64; ++attempt) {
        int gaps_left = std::max(0, coord_cap + 1 - n);
        std::vector<std::vector<int>> gap(n);
        std::vector<int> width(n, 1);
        for (int v : t.postorder()) {
            const auto& cs = t.children(v);
            if (cs.empty()) continue;
            gap[v].assign(cs.size(), 0);
            int w = 0;
            for (std::size_t i = 0; i < cs.size(); ++i) {
                if (i > 0 && gaps_left > 0 && rng.chance(1, 4)) {
                    gap[v][i] = 1;
                    --gaps_left;
                }
                w += gap[v][i] + width[cs[i]];
            }
            width[v] = w;
        }
        if (width[t.root()] > coord_cap + 1) continue;

        std::vector<PtI> pos(n);
        std::vector<std::tuple<int, int, int>> stack{{t.root(), 0, 0}};  // node, slab x0, y
        while (!stack.empty()) {
            auto [v, x0, y] = stack.back();
            stack.pop_back();
            pos[v] = PtI(BigInt(x0 + rng.range(0, width[v] - 1)), BigInt(y));
            const auto& cs = t.children(v);
            if (cs.empty()) continue;
            int step = 1;
            if (-y + 2 * lev[v] <= coord_cap && rng.chance(1, 3)) step = 2;
            int cx = x0;
            for (std::size_t i = 0; i < cs.size(); ++i) {
                cx += gap[v][i];
                stack.push_back({cs[i], cx, y - step});
                cx += width[cs[i]];
            }
        }
        GridDrawing g(tree, std::move(pos));
        auto [w, h] = bounding_extent(g);
        if (w > coord_cap + 1 || h > coord_cap + 1) continue;
        if (is_valid_upward_drawing(g)) return g;
    }
    return canonical_drawing(tree, Orientation::Upward, PtI(BigInt(0), BigInt(0)));
}

/// Second drawing with identical y-coordinates (Lemma 2 suite input).
inline GridDrawing random_equal_y_variant(Rng& rng, const GridDrawing& base, int coord_cap = 12) {
    const TreePtr& tree = base.tree;
    int n = tree->size();
    for (int attempt = 0; attempt < 64; ++attempt) {
        GridDrawing g = random_upward_drawing(rng, tree, coord_cap);
        std::vector<PtI> pos = g.pos;
        for (int v = 0; v < n; ++v) pos[v].y = base.pos[v].y;
        GridDrawing out(tree, std::move(pos));
        if (is_valid_upward_drawing(out)) return out;
    }
    return translated(base, PtI(BigInt(1), BigInt(0)));
}

/// Random order-preserving planar grid drawing (not necessarily upward): canonical
/// start plus random single-node moves, each accepted only if the move itself is an
/// exact-verified planar linear step. Coordinates stay in [0, coord_cap-1]^2 shifted
/// down, so width and height never exceed coord_cap.
inline GridDrawing random_free_drawing(Rng& rng, const TreePtr& tree, int coord_cap = 8,
                                       int moves = -1) {
    int n = tree->size();
    if (n > coord_cap)
        throw std::invalid_argument("random_free_drawing: need coord_cap >= n");
    GridDrawing cur = canonical_drawing(tree, Orientation::Upward, PtI(BigInt(0), BigInt(0)));
    if (moves < 0) moves = 4 * n;
    for (int k = 0; k < moves; ++k) {
        int v = rng.range(0, n - 1);
        PtI delta(BigInt(rng.range(-2, 2)), BigInt(rng.range(-2, 2)));
        if (delta.x == 0 && delta.y == 0) continue;
        std::vector<PtI> pos = cur.pos;
        pos[v] = pos[v] + delta;
        if (pos[v].x < 0 || pos[v].x > coord_cap - 1 || pos[v].y < -(coord_cap - 1) ||
            pos[v].y > 0)
            continue;
        GridDrawing cand(tree, std::move(pos));
        if (!is_planar(cand)) continue;
        if (!verify_linear_step(cur, cand, false).planar) continue;
        cur = std::move(cand);
    }
    return cur;
}

}  // namespace treemorph
