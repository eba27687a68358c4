#pragma once

#include <stdexcept>
#include <vector>

#include "treemorph/morph.hpp"

namespace treemorph {

/// Structure-only x-coordinates for a binary tree: in-order ranks shifted so the
/// root sits at x = 0 (a single child counts as a left child). Exactly n occupied
/// consecutive columns; left subtree ends at x(root)-1, right subtree starts at +1.
inline std::vector<BigInt> canonical_x_assignment(const OrderedTree& t) {
    for (int v = 0; v < t.size(); ++v)
        if (t.children(v).size() > 2)
            throw std::invalid_argument("canonical_x_assignment: node " + std::to_string(v) +
                                        " has more than two children");
    std::vector<int> rank = inorder_ranks_binary(t);
    std::vector<BigInt> x(t.size());
    for (int v = 0; v < t.size(); ++v) x[v] = BigInt(rank[v] - rank[t.root()]);
    return x;
}

namespace detail {

inline void require_valid_upward_pair(const TreePtr& tree, const GridDrawing& g0,
                                      const GridDrawing& g1, const char* who) {
    if (g0.tree.get() != tree.get() || g1.tree.get() != tree.get())
        throw std::invalid_argument(std::string(who) + ": drawings of a different tree");
    if (!is_valid_upward_drawing(g0) || !is_valid_upward_drawing(g1))
        throw std::invalid_argument(std::string(who) +
                                    ": inputs must be order-preserving strictly-upward planar");
}

}  // namespace detail

/// 3-step upward planar morph <G0, G0', G1', G1> for binary trees: G_i' keeps the
/// y-coordinates of G_i and takes the structure-only x-assignment, so the middle
/// step moves nodes vertically and the outer steps are unidirectional horizontal.
inline Morph morph_upward_3step(const TreePtr& tree, const GridDrawing& g0,
                                const GridDrawing& g1) {
    detail::require_valid_upward_pair(tree, g0, g1, "morph_upward_3step");
    std::vector<BigInt> xs = canonical_x_assignment(*tree);
    auto prime = [&](const GridDrawing& g) {
        std::vector<PtI> pos(g.size());
        for (int v = 0; v < g.size(); ++v) pos[v] = PtI(xs[v], g.pos[v].y);
        return GridDrawing(tree, std::move(pos));
    };
    Morph m(tree, {g0});
    m.append(prime(g0), false);
    m.append(prime(g1), false);
    m.append(g1, false);
    return m;
}

/// Unbounded-degree variant of the canonical x-layout: per-subtree horizontal
/// slabs right of the root, one empty column between consecutive subtree bounding
/// boxes, each subtree pushed right minimally until, under every supplied
/// y-assignment, the edge from the root enters angularly after its left sibling's
/// edge and clears everything already placed. The result is shared by all the
/// y-assignments, so the middle morphing step moves nodes vertically only.
/// Width may be exponential in n.
inline std::vector<BigInt> spread_x_assignment(const OrderedTree& t,
                                               const std::vector<std::vector<BigInt>>& ys) {
    int n = t.size();
    struct SubLayout {
        std::vector<int> nodes;
        std::vector<BigInt> relx;  // relative to the subtree root (root at 0 = min)
        BigInt width;
    };
    std::vector<SubLayout> lay(n);
    std::vector<BigInt> placed_x(n);

    for (int v : t.postorder()) {
        SubLayout& L = lay[v];
        L.nodes = {v};
        L.relx = {BigInt(0)};
        L.width = 1;
        if (t.is_leaf(v)) continue;

        BigInt cursor = 1;  // next free column relative to v
        BigInt prev_offset = 0;
        int prev_child = -1;
        for (int c : t.children(v)) {
            const SubLayout& C = lay[c];
            for (std::size_t i = 0; i < L.nodes.size(); ++i) placed_x[L.nodes[i]] = L.relx[i];

            auto ok_at = [&](const BigInt& off) {
                for (const auto& y : ys) {
                    BigInt dy = y[c] - y[v];  // < 0 in a strictly-upward drawing
                    // the edge to c must enter strictly clockwise-after the previous
                    // child's edge: cross(prev_dir, dir) > 0 for downward directions
                    if (prev_child >= 0) {
                        BigInt prev_dy = y[prev_child] - y[v];
                        if (!(prev_offset * dy - prev_dy * off > 0)) return false;
                    }
                    // (iii): the segment v->c clears already placed nodes and edges
                    PtI vv(BigInt(0), BigInt(0));
                    PtI cc(off, dy);
                    for (std::size_t i = 0; i < L.nodes.size(); ++i) {
                        int u = L.nodes[i];
                        if (u == v) continue;
                        PtI pu(L.relx[i], y[u] - y[v]);
                        if (on_segment_closed(pu, vv, cc)) return false;
                        for (int w : t.children(u)) {
                            PtI pw(placed_x[w], y[w] - y[v]);
                            if (segments_intersect(vv, cc, pu, pw)) return false;
                        }
                    }
                }
                return true;
            };

            BigInt offset = cursor;
            while (!ok_at(offset)) offset += 1;

            for (std::size_t i = 0; i < C.nodes.size(); ++i) {
                L.nodes.push_back(C.nodes[i]);
                L.relx.push_back(offset + C.relx[i]);
            }
            prev_offset = offset;
            prev_child = c;
            cursor = offset + C.width + 1;  // one empty column after this subtree
        }
        BigInt maxrel = 0;
        for (const auto& rx : L.relx) maxrel = std::max(maxrel, rx);
        L.width = maxrel + 1;
    }

    std::vector<BigInt> x(n, BigInt(0));
    const SubLayout& R = lay[t.root()];
    for (std::size_t i = 0; i < R.nodes.size(); ++i) x[R.nodes[i]] = R.relx[i];
    return x;
}

/// 3-step upward planar morph for arbitrary-degree trees via a shared
/// spread_x_assignment, so <G0',G1'> is vertical-only just as in the binary case.
/// The intermediate drawings may be exponentially wide in n.
inline Morph morph_upward_3step_general(const TreePtr& tree, const GridDrawing& g0,
                                        const GridDrawing& g1) {
    detail::require_valid_upward_pair(tree, g0, g1, "morph_upward_3step_general");
    std::vector<std::vector<BigInt>> ys(2, std::vector<BigInt>(tree->size()));
    for (int v = 0; v < tree->size(); ++v) {
        ys[0][v] = g0.pos[v].y;
        ys[1][v] = g1.pos[v].y;
    }
    std::vector<BigInt> xs = spread_x_assignment(*tree, ys);
    auto prime = [&](const GridDrawing& g) {
        std::vector<PtI> pos(g.size());
        for (int v = 0; v < g.size(); ++v) pos[v] = PtI(xs[v], g.pos[v].y);
        return GridDrawing(tree, std::move(pos));
    };
    Morph m(tree, {g0});
    m.append(prime(g0), false);
    m.append(prime(g1), false);
    m.append(g1, false);
    return m;
}

/// The exponential-width star instance: root at the origin, top children at
/// (i, -1), bottom children at (i*h+1, -h), alternating in left-to-right order.
inline std::pair<TreePtr, GridDrawing> gen_exponential_example(int children, int h) {
    if (children < 2 || h < 2)
        throw std::invalid_argument("gen_exponential_example: need children >= 2, h >= 2");
    int n = children + 1;
    std::vector<int> parent(n, 0);
    parent[0] = -1;
    std::vector<std::vector<int>> ch(n);
    std::vector<PtI> pos(n);
    pos[0] = PtI(BigInt(0), BigInt(0));
    int tops = 0, bottoms = 0;
    for (int k = 1; k <= children; ++k) {
        ch[0].push_back(k);
        if (k % 2 == 1) {
            ++tops;
            pos[k] = PtI(BigInt(tops), BigInt(-1));
        } else {
            ++bottoms;
            pos[k] = PtI(BigInt(bottoms * h + 1), BigInt(-h));
        }
    }
    auto tree = std::make_shared<OrderedTree>(0, std::move(parent), std::move(ch));
    return {tree, GridDrawing(tree, std::move(pos))};
}

}  // namespace treemorph
