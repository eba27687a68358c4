#include "treemorph/tree.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "treemorph/random_gen.hpp"

using namespace treemorph;

TEST(ParseTree, BaseCases) {
    EXPECT_EQ(parse_tree("()")->size(), 1);
    auto t = parse_tree("(()())");
    EXPECT_EQ(t->size(), 3);
    EXPECT_EQ(t->root(), 0);
    EXPECT_EQ(t->children(0), (std::vector<int>{1, 2}));
    auto path = parse_tree("((()))");
    EXPECT_EQ(path->size(), 3);
    EXPECT_EQ(path->children(0), (std::vector<int>{1}));
    EXPECT_EQ(path->children(1), (std::vector<int>{2}));
}

TEST(ParseTree, ErrorsCarryPosition) {
    try {
        parse_tree("(()");
        FAIL() << "expected parse error";
    } catch (const TreeParseError& e) {
        EXPECT_EQ(e.position, 3u);
    }
    try {
        parse_tree("())");
        FAIL() << "expected parse error";
    } catch (const TreeParseError& e) {
        EXPECT_EQ(e.position, 2u);
    }
    EXPECT_THROW(parse_tree(""), TreeParseError);
    EXPECT_THROW(parse_tree("(x)"), TreeParseError);
    EXPECT_THROW(parse_tree("()()"), TreeParseError);
}

TEST(ParseTree, RoundTrip) {
    Rng rng(7);
    for (int it = 0; it < 100; ++it) {
        auto t = random_tree(rng, rng.range(1, 20));
        std::string s = serialize_tree(t);
        EXPECT_EQ(serialize_tree(parse_tree(s)), s);
    }
    // parse . serialize is the identity on trees (indices are preorder on both sides)
    auto t = parse_tree("((())()((())))");
    auto u = parse_tree(serialize_tree(t));
    EXPECT_EQ(t->size(), u->size());
    for (int v = 0; v < t->size(); ++v) EXPECT_EQ(t->children(v), u->children(v));
}

TEST(RightmostLeaf, Examples) {
    EXPECT_EQ(rightmost_leaf(*parse_tree("()")), 0);
    EXPECT_EQ(rightmost_leaf(*parse_tree("(()())")), 2);
}

TEST(RightmostLeaf, MatchesBruteForceWalk) {
    Rng rng(13);
    for (int it = 0; it < 50; ++it) {
        auto t = random_tree(rng, 10);
        // oracle: repeatedly take the last child
        int v = t->root();
        while (!t->children(v).empty()) v = t->children(v).back();
        EXPECT_EQ(rightmost_leaf(*t), v);
    }
}

TEST(PostorderInternal, Examples) {
    EXPECT_TRUE(postorder_internal(*parse_tree("()")).empty());
    auto path = parse_tree("((()))");
    EXPECT_EQ(postorder_internal(*path), (std::vector<int>{1, 0}));
}

TEST(PostorderInternal, ChildrenBeforeParents) {
    Rng rng(17);
    for (int it = 0; it < 100; ++it) {
        auto t = random_tree(rng, rng.range(1, 20));
        auto order = postorder_internal(*t);
        std::vector<int> seen(t->size(), 0);
        std::set<int> emitted;
        for (int v : order) {
            EXPECT_TRUE(t->is_internal(v));
            EXPECT_FALSE(emitted.count(v));
            for (int c : t->children(v))
                if (t->is_internal(c)) EXPECT_TRUE(emitted.count(c));
            emitted.insert(v);
        }
        int internal_count = 0;
        for (int v = 0; v < t->size(); ++v) internal_count += t->is_internal(v);
        EXPECT_EQ(static_cast<int>(order.size()), internal_count);
    }
}

TEST(Lca, Examples) {
    auto t = parse_tree("(()())");
    EXPECT_EQ(lca(*t, 1, 1), 1);
    EXPECT_EQ(lca(*t, 1, 2), 0);
}

TEST(Lca, MatchesRootPathIntersection) {
    Rng rng(23);
    for (int it = 0; it < 50; ++it) {
        auto t = random_tree(rng, 12);
        for (int rep = 0; rep < 10; ++rep) {
            int u = rng.range(0, t->size() - 1), v = rng.range(0, t->size() - 1);
            // oracle: deepest common element of the two root paths
            std::set<int> pu;
            for (int a = u;; a = t->parent(a)) {
                pu.insert(a);
                if (a == t->root()) break;
            }
            int best = t->root();
            for (int a = v;; a = t->parent(a)) {
                if (pu.count(a)) {
                    best = a;
                    break;
                }
                if (a == t->root()) break;
            }
            EXPECT_EQ(lca(*t, u, v), best);
        }
    }
}

TEST(Reroot, PathExample) {
    // path a-b-c rooted at the middle: reroot at leaf 1 (index order: root 0, children 1,2)
    auto t = parse_tree("(()())");
    auto r = reroot_at_leaf(t);
    EXPECT_EQ(r->root(), 1);
    EXPECT_EQ(r->children(1), (std::vector<int>{0}));
    EXPECT_EQ(r->children(0), (std::vector<int>{2}));
}

TEST(Reroot, SingleNodeUnchanged) {
    auto t = parse_tree("()");
    EXPECT_EQ(reroot_at_leaf(t).get(), t.get());
}

static std::vector<std::vector<int>> all_rotations(const OrderedTree& t) {
    std::vector<std::vector<int>> out(t.size());
    for (int v = 0; v < t.size(); ++v) out[v] = rotation_at(t, v);
    return out;
}

static bool cyclically_equal(std::vector<int> a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (std::size_t s = 0; s < a.size(); ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[(s + i) % a.size()] != b[i]) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

TEST(Reroot, PreservesRotationSystem) {
    Rng rng(31);
    for (int it = 0; it < 100; ++it) {
        auto t = random_tree(rng, rng.range(2, 12));
        auto r = reroot_at_leaf(t);
        EXPECT_TRUE(t->is_leaf(r->root()));
        for (int v = 0; v < t->size(); ++v)
            if (t->is_leaf(v)) {
                EXPECT_GE(v, 0);
                break;
            }
        auto rot_before = all_rotations(*t), rot_after = all_rotations(*r);
        for (int v = 0; v < t->size(); ++v)
            EXPECT_TRUE(cyclically_equal(rot_before[v], rot_after[v]))
                << "rotation changed at node " << v;
    }
}

TEST(Reroot, PicksSmallestIndexLeaf) {
    Rng rng(37);
    for (int it = 0; it < 50; ++it) {
        auto t = random_tree(rng, rng.range(2, 12));
        auto r = reroot_at_leaf(t);
        for (int v = 0; v < r->root(); ++v) EXPECT_FALSE(t->is_leaf(v));
        EXPECT_TRUE(t->is_leaf(r->root()));
    }
}

TEST(InorderRanks, BinaryBasics) {
    // root with left and right child
    auto t = parse_tree("(()())");
    auto rank = inorder_ranks_binary(*t);
    EXPECT_EQ(rank[1], 0);
    EXPECT_EQ(rank[0], 1);
    EXPECT_EQ(rank[2], 2);
    EXPECT_THROW(inorder_ranks_binary(*parse_tree("(()()())")), std::invalid_argument);
}
