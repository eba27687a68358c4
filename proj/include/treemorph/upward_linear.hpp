#pragma once

#include <stdexcept>
#include <vector>

#include "treemorph/morph.hpp"

namespace treemorph {

/// (2n-1)-step upward planar morph between two order-preserving strictly-upward
/// planar grid drawings of the same rooted ordered tree.
///
/// The recursion (peel the rightmost leaf, morph the rest, re-insert the leaf one
/// unit below its parent and one unit right of the occupied columns) is replayed
/// iteratively: leaves are peeled into a stack, then the morph is grown back up.
inline Morph morph_upward_linear(const TreePtr& tree, const GridDrawing& g0,
                                 const GridDrawing& g1) {
    if (g0.tree.get() != tree.get() || g1.tree.get() != tree.get())
        throw std::invalid_argument("morph_upward_linear: drawings of a different tree");
    if (!is_valid_upward_drawing(g0) || !is_valid_upward_drawing(g1))
        throw std::invalid_argument(
            "morph_upward_linear: inputs must be order-preserving strictly-upward planar");

    const OrderedTree& t = *tree;
    int n = t.size();

    // peel: remove the rightmost leaf repeatedly; record (leaf, parent) pairs
    std::vector<std::vector<int>> children(t.size());
    for (int v = 0; v < n; ++v) children[v] = t.children(v);
    std::vector<std::pair<int, int>> peeled;  // (leaf, parent), in removal order
    std::vector<bool> alive(n, true);
    for (int s = n; s >= 2; --s) {
        int v = t.root();
        int par = -1;
        while (!children[v].empty()) {
            par = v;
            v = children[v].back();
        }
        peeled.emplace_back(v, par);
        children[par].pop_back();  // the rightmost leaf is its parent's last child
        alive[v] = false;
    }

    // max x over a node subset in a position vector
    auto max_x = [](const std::vector<PtI>& pos, const std::vector<int>& nodes) {
        BigInt best = pos[nodes[0]].x;
        for (int v : nodes) best = std::max(best, pos[v].x);
        return best;
    };

    // replay: start from the single surviving node (the root)
    std::vector<int> members{t.root()};
    // keyframes hold full-length position vectors; only member nodes are meaningful
    std::vector<std::vector<PtI>> frames{g0.pos, g1.pos};

    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
        auto [leaf, par] = *it;
        std::vector<int> prev_members = members;
        members.push_back(leaf);

        std::size_t m = frames.size();
        std::vector<std::vector<PtI>> next;
        next.reserve(m + 2);

        // first and last frames: the input drawings restricted to the current tree
        next.push_back(g0.pos);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<PtI> f = frames[i];
            BigInt col;
            if (i == 0) {
                col = max_x(g0.pos, members);  // rightmost column of Gamma_0 incl. the leaf
            } else if (i + 1 == m) {
                col = max_x(g1.pos, members);
            } else {
                col = max_x(f, prev_members);
            }
            f[leaf] = PtI(col + 1, f[par].y - 1);
            next.push_back(std::move(f));
        }
        next.push_back(g1.pos);
        frames = std::move(next);
    }

    std::vector<GridDrawing> keyframes;
    keyframes.reserve(frames.size());
    for (auto& f : frames) keyframes.emplace_back(tree, std::move(f));

    Morph m(tree, {keyframes.front()});
    for (std::size_t i = 1; i < keyframes.size(); ++i) m.append(keyframes[i], false);

    if (m.steps() != 2 * n - 1)
        throw std::logic_error("morph_upward_linear: keyframe bookkeeping is off");
    return m;
}

}  // namespace treemorph
