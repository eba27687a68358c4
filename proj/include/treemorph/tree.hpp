#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace treemorph {

class TreeParseError : public std::runtime_error {
  public:
    TreeParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

/// Rooted ordered tree with stable preorder node indices.
/// Counter-clockwise edge order at a non-root node v is (parent, c1, ..., ck);
/// at the root it is (c1, ..., ck).
class OrderedTree {
  public:
    OrderedTree(int root, std::vector<int> parent, std::vector<std::vector<int>> children)
        : root_(root), parent_(std::move(parent)), children_(std::move(children)) {
        validate();
    }

    int size() const { return static_cast<int>(parent_.size()); }
    int root() const { return root_; }
    int parent(int v) const { return parent_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    bool is_leaf(int v) const { return children_[v].empty(); }
    bool is_internal(int v) const { return !children_[v].empty(); }
    int degree(int v) const {
        return static_cast<int>(children_[v].size()) + (v == root_ ? 0 : 1);
    }

    /// Left-to-right preorder of the whole tree.
    std::vector<int> preorder() const { return preorder_from(root_); }

    std::vector<int> preorder_from(int start) const {
        std::vector<int> out, stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out.push_back(v);
            const auto& cs = children_[v];
            for (auto it = cs.rbegin(); it != cs.rend(); ++it) stack.push_back(*it);
        }
        return out;
    }

    /// Left-to-right DFS postorder.
    std::vector<int> postorder() const {
        std::vector<int> out;
        out.reserve(parent_.size());
        // (node, child cursor) explicit stack
        std::vector<std::pair<int, std::size_t>> stack{{root_, 0}};
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < children_[v].size()) {
                int c = children_[v][i++];
                stack.push_back({c, 0});
            } else {
                out.push_back(v);
                stack.pop_back();
            }
        }
        return out;
    }

    std::vector<int> nodes_of_subtree(int u) const { return preorder_from(u); }

    int subtree_size(int u) const { return static_cast<int>(preorder_from(u).size()); }

    int depth(int v) const {
        int d = 0;
        while (v != root_) {
            v = parent_[v];
            ++d;
        }
        return d;
    }

    bool is_ancestor_of(int a, int d) const {
        while (true) {
            if (d == a) return true;
            if (d == root_) return false;
            d = parent_[d];
        }
    }

    bool is_binary() const {
        for (const auto& cs : children_)
            if (cs.size() > 2) return false;
        return true;
    }

  private:
    void validate() const {
        int n = size();
        if (n == 0) throw std::invalid_argument("OrderedTree: empty");
        if (root_ < 0 || root_ >= n) throw std::invalid_argument("OrderedTree: bad root");
        if (parent_[root_] != -1) throw std::invalid_argument("OrderedTree: root has a parent");
        std::vector<int> seen(n, 0);
        for (int v : preorder()) {
            if (v < 0 || v >= n || seen[v]++) throw std::invalid_argument("OrderedTree: not a tree");
        }
        for (int v = 0; v < n; ++v) {
            if (!seen[v]) throw std::invalid_argument("OrderedTree: disconnected");
            for (int c : children_[v])
                if (parent_[c] != v) throw std::invalid_argument("OrderedTree: parent/children mismatch");
            if (v != root_) {
                const auto& sib = children_[parent_[v]];
                if (std::find(sib.begin(), sib.end(), v) == sib.end())
                    throw std::invalid_argument("OrderedTree: node missing from parent's child list");
            }
        }
    }

    int root_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
};

using TreePtr = std::shared_ptr<const OrderedTree>;

/// Balanced-parenthesis grammar: node ::= "(" node* ")", preorder indexing.
inline TreePtr parse_tree(const std::string& text) {
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
    std::vector<int> stack;
    int root = -1;
    std::size_t i = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '(') {
            int id = static_cast<int>(parent.size());
            parent.push_back(stack.empty() ? -1 : stack.back());
            children.emplace_back();
            if (stack.empty()) {
                if (root != -1) throw TreeParseError("multiple roots", i);
                root = id;
            } else {
                children[stack.back()].push_back(id);
            }
            stack.push_back(id);
        } else if (c == ')') {
            if (stack.empty()) throw TreeParseError("unbalanced ')'", i);
            stack.pop_back();
        } else {
            throw TreeParseError(std::string("unexpected character '") + c + "'", i);
        }
    }
    if (!stack.empty()) throw TreeParseError("unbalanced '('", text.size());
    if (root == -1) throw TreeParseError("empty input", 0);
    return std::make_shared<OrderedTree>(root, std::move(parent), std::move(children));
}

inline std::string serialize_tree(const OrderedTree& t) {
    std::string out;
    // preorder emit with explicit close tracking
    std::vector<std::pair<int, std::size_t>> stack{{t.root(), 0}};
    out.push_back('(');
    while (!stack.empty()) {
        auto& [v, i] = stack.back();
        if (i < t.children(v).size()) {
            int c = t.children(v)[i++];
            out.push_back('(');
            stack.push_back({c, 0});
        } else {
            out.push_back(')');
            stack.pop_back();
        }
    }
    return out;
}

inline std::string serialize_tree(const TreePtr& t) { return serialize_tree(*t); }

/// Terminal node of the rightmost path (last child taken repeatedly from the root).
inline int rightmost_leaf(const OrderedTree& t) {
    int v = t.root();
    while (!t.is_leaf(v)) v = t.children(v).back();
    return v;
}

/// Nodes of the rightmost path, root first.
inline std::vector<int> rightmost_path(const OrderedTree& t) {
    std::vector<int> path{t.root()};
    while (!t.is_leaf(path.back())) path.push_back(t.children(path.back()).back());
    return path;
}

/// Internal nodes in left-to-right DFS postorder (children before parents).
inline std::vector<int> postorder_internal(const OrderedTree& t) {
    std::vector<int> out;
    for (int v : t.postorder())
        if (t.is_internal(v)) out.push_back(v);
    return out;
}

inline int lca(const OrderedTree& t, int u, int v) {
    std::vector<bool> mark(t.size(), false);
    int a = u;
    while (true) {
        mark[a] = true;
        if (a == t.root()) break;
        a = t.parent(a);
    }
    int b = v;
    while (!mark[b]) b = t.parent(b);
    return b;
}

/// Cyclic ccw neighbor order around v: (parent, c1..ck) for non-root, (c1..ck) at the root.
inline std::vector<int> rotation_at(const OrderedTree& t, int v) {
    std::vector<int> cyc;
    if (v != t.root()) cyc.push_back(t.parent(v));
    for (int c : t.children(v)) cyc.push_back(c);
    return cyc;
}

/// Reroot at the smallest-index leaf, preserving the rotation system.
/// Node indices are retained. For n == 1 the tree is returned unchanged.
inline TreePtr reroot_at_leaf(const TreePtr& tree) {
    const OrderedTree& t = *tree;
    int n = t.size();
    if (n == 1) return tree;
    int new_root = -1;
    for (int v = 0; v < n; ++v)
        if (t.is_leaf(v)) {
            new_root = v;
            break;
        }

    std::vector<std::vector<int>> cyc(n);
    for (int v = 0; v < n; ++v) cyc[v] = rotation_at(t, v);

    std::vector<int> parent(n, -1);
    std::vector<std::vector<int>> children(n);
    // BFS from the new root; new children of v = cyclic order after the new parent edge.
    std::vector<int> queue{new_root};
    std::vector<bool> seen(n, false);
    seen[new_root] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        const auto& cy = cyc[v];
        std::size_t start = 0;
        if (v != new_root) {
            while (cy[start] != parent[v]) ++start;
            ++start;
        }
        for (std::size_t j = 0; j < cy.size(); ++j) {
            int w = cy[(start + j) % cy.size()];
            if (v != new_root && w == parent[v]) continue;
            parent[w] = v;
            children[v].push_back(w);
            seen[w] = true;
            queue.push_back(w);
        }
    }
    return std::make_shared<OrderedTree>(new_root, std::move(parent), std::move(children));
}

/// In-order ranks for a binary tree (single child counts as a left child).
inline std::vector<int> inorder_ranks_binary(const OrderedTree& t) {
    if (!t.is_binary()) throw std::invalid_argument("inorder_ranks_binary: tree is not binary");
    std::vector<int> rank(t.size(), -1);
    int next = 0;
    // iterative in-order: (node, state 0=descend-left, 1=emit-and-right)
    std::vector<std::pair<int, int>> stack{{t.root(), 0}};
    while (!stack.empty()) {
        auto [v, st] = stack.back();
        stack.pop_back();
        const auto& cs = t.children(v);
        if (st == 0) {
            stack.push_back({v, 1});
            if (!cs.empty()) stack.push_back({cs[0], 0});
        } else {
            rank[v] = next++;
            if (cs.size() == 2) stack.push_back({cs[1], 0});
        }
    }
    return rank;
}

}  // namespace treemorph
