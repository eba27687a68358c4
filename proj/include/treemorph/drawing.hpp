#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treemorph/geometry.hpp"
#include "treemorph/tree.hpp"

namespace treemorph {

enum class Orientation { Upward, Leftward, Downward, Rightward };

inline Orientation rotate_ccw(Orientation o) {
    switch (o) {
        case Orientation::Upward: return Orientation::Leftward;
        case Orientation::Leftward: return Orientation::Downward;
        case Orientation::Downward: return Orientation::Rightward;
        case Orientation::Rightward: return Orientation::Upward;
    }
    return Orientation::Upward;
}

inline Orientation rotate_cw(Orientation o) {
    return rotate_ccw(rotate_ccw(rotate_ccw(o)));
}

inline const char* orientation_name(Orientation o) {
    switch (o) {
        case Orientation::Upward: return "upward";
        case Orientation::Leftward: return "leftward";
        case Orientation::Downward: return "downward";
        case Orientation::Rightward: return "rightward";
    }
    return "?";
}

/// Straight-line grid drawing of a tree: one integer point per node.
struct GridDrawing {
    TreePtr tree;
    std::vector<PtI> pos;

    GridDrawing() = default;
    GridDrawing(TreePtr t, std::vector<PtI> p) : tree(std::move(t)), pos(std::move(p)) {
        if (static_cast<int>(pos.size()) != tree->size())
            throw std::invalid_argument("GridDrawing: one position per node required");
    }

    int size() const { return tree->size(); }

    /// Edges as (child, parent) index pairs.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> es;
        es.reserve(size() - 1);
        for (int v = 0; v < size(); ++v)
            if (v != tree->root()) es.emplace_back(v, tree->parent(v));
        return es;
    }
};

inline std::pair<BigInt, BigInt> bounding_extent(const GridDrawing& g) {
    BigInt minx = g.pos[0].x, maxx = g.pos[0].x, miny = g.pos[0].y, maxy = g.pos[0].y;
    for (const auto& p : g.pos) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    return {maxx - minx + 1, maxy - miny + 1};
}

inline BoxI bounding_box(const GridDrawing& g) {
    BoxI b{g.pos[0].x, g.pos[0].x, g.pos[0].y, g.pos[0].y};
    for (const auto& p : g.pos) {
        b.x0 = std::min(b.x0, p.x);
        b.x1 = std::max(b.x1, p.x);
        b.y0 = std::min(b.y0, p.y);
        b.y1 = std::max(b.y1, p.y);
    }
    return b;
}

struct PlanarityViolation {
    enum class Kind { NodeCoincidence, NodeOnEdge, EdgeCrossing } kind;
    int a = -1, b = -1, c = -1, d = -1;  // nodes involved (edge = (child, parent) pair)
    std::string describe() const {
        switch (kind) {
            case Kind::NodeCoincidence:
                return "nodes " + std::to_string(a) + " and " + std::to_string(b) + " coincide";
            case Kind::NodeOnEdge:
                return "node " + std::to_string(a) + " lies on edge (" + std::to_string(b) + "," +
                       std::to_string(c) + ")";
            case Kind::EdgeCrossing:
                return "edges (" + std::to_string(a) + "," + std::to_string(b) + ") and (" +
                       std::to_string(c) + "," + std::to_string(d) + ") cross";
        }
        return "?";
    }
};

/// Exact planarity decision; reports the first violation in scan order.
template <class T>
std::optional<PlanarityViolation> planarity_violation(const OrderedTree& tree,
                                                      const std::vector<Pt<T>>& pos) {
    int n = tree.size();
    for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w)
            if (pos[u] == pos[w])
                return PlanarityViolation{PlanarityViolation::Kind::NodeCoincidence, u, w};

    std::vector<std::pair<int, int>> es;
    for (int v = 0; v < n; ++v)
        if (v != tree.root()) es.emplace_back(v, tree.parent(v));

    for (int p = 0; p < n; ++p)
        for (const auto& [c, par] : es) {
            if (p == c || p == par) continue;
            if (on_segment_closed(pos[p], pos[c], pos[par]))
                return PlanarityViolation{PlanarityViolation::Kind::NodeOnEdge, p, c, par};
        }

    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            auto [a, b] = es[i];
            auto [c, d] = es[j];
            if (a == c || a == d || b == c || b == d) continue;  // adjacency covered above
            if (segments_intersect(pos[a], pos[b], pos[c], pos[d]))
                return PlanarityViolation{PlanarityViolation::Kind::EdgeCrossing, a, b, c, d};
        }
    return std::nullopt;
}

inline std::optional<PlanarityViolation> planarity_violation(const GridDrawing& g) {
    return planarity_violation(*g.tree, g.pos);
}

inline bool is_planar(const GridDrawing& g) { return !planarity_violation(g).has_value(); }

inline bool is_strictly_upward(const GridDrawing& g) {
    for (int v = 0; v < g.size(); ++v)
        if (v != g.tree->root() && !(g.pos[v].y < g.pos[g.tree->parent(v)].y)) return false;
    return true;
}

namespace detail {

/// Index of the ccw angular class of direction d measured from anchor a:
/// 0 = same direction, 1 = strictly between 0 and pi, 2 = opposite, 3 = rest.
template <class T>
int anchor_half(const Pt<T>& a, const Pt<T>& d) {
    T cr = cross(a, d);
    if (cr > 0) return 1;
    if (cr < 0) return 3;
    return dot(a, d) > 0 ? 0 : 2;
}

/// Strict ccw-from-anchor comparison of nonzero directions. Returns 0 when the
/// directions coincide (an overlap, impossible in a planar drawing).
template <class T>
int anchor_compare(const Pt<T>& a, const Pt<T>& d1, const Pt<T>& d2) {
    int h1 = anchor_half(a, d1), h2 = anchor_half(a, d2);
    if (h1 != h2) return h1 < h2 ? -1 : 1;
    T cr = cross(d1, d2);
    if (cr > 0) return -1;
    if (cr < 0) return 1;
    return 0;
}

}  // namespace detail

/// First node whose ccw edge order differs from the tree's rotation, if any.
/// At a non-root node the children must follow the parent edge in ccw order;
/// at the root the rotation is anchored by the virtual upward ray, which for
/// strictly-upward drawings is exactly the left-to-right entering rule.
/// Precondition: the drawing is planar.
inline std::optional<int> order_violation(const GridDrawing& g) {
    const OrderedTree& t = *g.tree;
    for (int v = 0; v < t.size(); ++v) {
        const std::vector<int>& expected = t.children(v);
        if (expected.size() <= 1) continue;
        PtI anchor = (v == t.root()) ? PtI(BigInt(0), BigInt(1)) : g.pos[t.parent(v)] - g.pos[v];
        std::vector<int> actual = expected;
        bool overlap = false;
        std::sort(actual.begin(), actual.end(), [&](int x, int y) {
            int c = detail::anchor_compare(anchor, g.pos[x] - g.pos[v], g.pos[y] - g.pos[v]);
            if (c == 0) overlap = true;
            return c < 0;
        });
        if (v != t.root())  // child edge overlapping the parent edge
            for (int c : expected)
                if (detail::anchor_half(anchor, g.pos[c] - g.pos[v]) == 0) overlap = true;
        if (overlap || actual != expected) return v;
    }
    return std::nullopt;
}

inline bool is_order_preserving(const GridDrawing& g) { return !order_violation(g).has_value(); }

inline bool is_valid_upward_drawing(const GridDrawing& g) {
    return is_planar(g) && is_strictly_upward(g) && is_order_preserving(g);
}

inline bool is_valid_planar_drawing(const GridDrawing& g) {
    return is_planar(g) && is_order_preserving(g);
}

/// Canonical relative layout of the subtree rooted at u: positions relative to u
/// for the Upward orientation, plus bbox width (= subtree size) and height.
struct CanonicalLayout {
    std::vector<int> nodes;      // preorder of the subtree
    std::vector<PtI> rel;        // aligned with nodes; rel of root is (0,0)
    BigInt width, height;
};

inline CanonicalLayout canonical_layout(const OrderedTree& t, int u) {
    CanonicalLayout out;
    out.nodes = t.preorder_from(u);
    std::vector<int> slot(t.size(), -1);
    for (std::size_t i = 0; i < out.nodes.size(); ++i) slot[out.nodes[i]] = static_cast<int>(i);
    out.rel.assign(out.nodes.size(), PtI());

    // heights bottom-up
    std::vector<BigInt> h(t.size());
    for (auto it = out.nodes.rbegin(); it != out.nodes.rend(); ++it) {
        BigInt best = 0;
        for (int c : t.children(*it)) best = std::max(best, h[c]);
        h[*it] = best + 1;
    }
    // positions top-down: root at (0,0); child subtrees one below, widths = sizes,
    // consecutive bounding boxes in adjacent columns
    std::vector<BigInt> sz(t.size());
    for (auto it = out.nodes.rbegin(); it != out.nodes.rend(); ++it) {
        BigInt s = 1;
        for (int c : t.children(*it)) s += sz[c];
        sz[*it] = s;
    }
    std::vector<std::pair<int, PtI>> stack{{u, PtI(BigInt(0), BigInt(0))}};
    while (!stack.empty()) {
        auto [v, at] = stack.back();
        stack.pop_back();
        out.rel[slot[v]] = at;
        BigInt cx = at.x + 1;
        for (int c : t.children(v)) {
            stack.push_back({c, PtI(cx, at.y - 1)});
            cx += sz[c];
        }
    }
    out.width = sz[u];
    out.height = h[u];
    return out;
}

inline PtI rotate_about(const PtI& p, const PtI& center, Orientation o) {
    PtI d = p - center;
    switch (o) {
        case Orientation::Upward: return center + d;
        case Orientation::Leftward: return center + PtI(-d.y, d.x);
        case Orientation::Downward: return center + PtI(-d.x, -d.y);
        case Orientation::Rightward: return center + PtI(d.y, -d.x);
    }
    return p;
}

/// Positions of the subtree rooted at u drawn canonically with orientation o and u at anchor.
/// Returned pairs are (node, position).
inline std::vector<std::pair<int, PtI>> canonical_subtree_positions(const OrderedTree& t, int u,
                                                                    Orientation o,
                                                                    const PtI& anchor) {
    CanonicalLayout lay = canonical_layout(t, u);
    std::vector<std::pair<int, PtI>> out;
    out.reserve(lay.nodes.size());
    for (std::size_t i = 0; i < lay.nodes.size(); ++i) {
        PtI p = anchor + lay.rel[i];
        out.emplace_back(lay.nodes[i], rotate_about(p, anchor, o));
    }
    return out;
}

/// Canonical drawing of the whole tree (recursive construction rotated about the root).
inline GridDrawing canonical_drawing(const TreePtr& tree, Orientation o, const PtI& anchor) {
    std::vector<PtI> pos(tree->size());
    for (const auto& [v, p] : canonical_subtree_positions(*tree, tree->root(), o, anchor))
        pos[v] = p;
    return GridDrawing(tree, std::move(pos));
}

/// Bounding box of the canonical drawing of (sub)tree size w, canonical height h,
/// orientation o, root at anchor.
inline BoxI canonical_bbox(const PtI& anchor, const BigInt& w, const BigInt& h, Orientation o) {
    switch (o) {
        case Orientation::Upward:
            return BoxI{anchor.x, anchor.x + w - 1, anchor.y - h + 1, anchor.y};
        case Orientation::Leftward:
            return BoxI{anchor.x, anchor.x + h - 1, anchor.y, anchor.y + w - 1};
        case Orientation::Downward:
            return BoxI{anchor.x - w + 1, anchor.x, anchor.y, anchor.y + h - 1};
        case Orientation::Rightward:
            return BoxI{anchor.x - h + 1, anchor.x, anchor.y - w + 1, anchor.y};
    }
    return BoxI{};
}

/// Property-1 oracle: the region right of the rightmost path, between the horizontal
/// half-lines through the root and the rightmost leaf, contains nothing else.
/// Precondition: g is planar, strictly upward and order-preserving. Planarity already
/// excludes crossings with the path itself, so only node containment and ray contacts
/// need checking; contact at a shared path node is part of R_S and allowed.
inline bool check_rightmost_region_empty(const GridDrawing& g) {
    if (!is_valid_upward_drawing(g))
        throw std::invalid_argument("check_rightmost_region_empty: invalid input drawing");
    const OrderedTree& t = *g.tree;
    int n = t.size();
    if (n == 1) return true;

    std::vector<int> path = rightmost_path(t);
    std::vector<bool> on_path(n, false);
    for (int v : path) on_path[v] = true;
    const BigInt y_top = g.pos[path.front()].y;   // root
    const BigInt y_bot = g.pos[path.back()].y;    // rightmost leaf

    // Membership in the closed region (path and rays included).
    auto point_in_region = [&](const PtI& p) {
        if (p.y > y_top || p.y < y_bot) return false;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const PtI& a = g.pos[path[i]];      // upper
            const PtI& b = g.pos[path[i + 1]];  // lower
            if (p.y > a.y || p.y < b.y) continue;
            // path runs downward a->b; east of it is the left side of the direction
            return orient(a, b, p) >= 0;
        }
        return false;
    };

    auto segment_hits_ray = [&](const PtI& a, const PtI& b, const PtI& origin) {
        // closed horizontal ray from origin pointing rightward; edges are never
        // horizontal in a strictly-upward drawing
        BigInt ry = origin.y;
        if ((a.y > ry && b.y > ry) || (a.y < ry && b.y < ry)) return false;
        Rat t_hit(ry - a.y, b.y - a.y);
        t_hit.canonicalize();
        if (t_hit < 0 || t_hit > 1) return false;
        Rat x_hit = Rat(a.x) + t_hit * Rat(b.x - a.x);
        return x_hit >= Rat(origin.x);
    };

    for (int v = 0; v < n; ++v)
        if (!on_path[v] && point_in_region(g.pos[v])) return false;

    int root_node = path.front(), leaf_node = path.back();
    for (const auto& [c, par] : g.edges()) {
        if (on_path[c] && on_path[par]) continue;  // path edge
        if (point_in_region(g.pos[c]) && !on_path[c]) return false;
        if (point_in_region(g.pos[par]) && !on_path[par]) return false;
        const PtI& a = g.pos[c];
        const PtI& b = g.pos[par];
        if (c != root_node && par != root_node && segment_hits_ray(a, b, g.pos[root_node]))
            return false;
        if (c != leaf_node && par != leaf_node && segment_hits_ray(a, b, g.pos[leaf_node]))
            return false;
    }
    return true;
}

/// Exact squared point-to-line distance for integer points, a != b.
inline Rat point_line_distance_sq(const PtI& p, const PtI& a, const PtI& b) {
    if (a == b) throw std::invalid_argument("point_line_distance_sq: a == b");
    return point_line_dist_sq(to_rat(p), to_rat(a), to_rat(b));
}

inline GridDrawing translated(const GridDrawing& g, const PtI& delta) {
    std::vector<PtI> pos = g.pos;
    for (auto& p : pos) p = p + delta;
    return GridDrawing(g.tree, std::move(pos));
}

}  // namespace treemorph
