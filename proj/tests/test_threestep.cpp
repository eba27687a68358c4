#include "treemorph/upward_threestep.hpp"

#include <gtest/gtest.h>

#include "treemorph/random_gen.hpp"

using namespace treemorph;

namespace {

GridDrawing make(const TreePtr& t, std::vector<std::pair<long, long>> xy) {
    std::vector<PtI> pos;
    for (auto [x, y] : xy) pos.emplace_back(BigInt(x), BigInt(y));
    return GridDrawing(t, std::move(pos));
}

}  // namespace

TEST(CanonicalX, Examples) {
    auto single = parse_tree("()");
    EXPECT_EQ(canonical_x_assignment(*single), (std::vector<BigInt>{BigInt(0)}));

    auto t = parse_tree("(()())");
    auto xs = canonical_x_assignment(*t);
    EXPECT_EQ(xs[1], BigInt(-1));
    EXPECT_EQ(xs[0], BigInt(0));
    EXPECT_EQ(xs[2], BigInt(1));
}

TEST(CanonicalX, InorderOracleAndConsecutiveColumns) {
    Rng rng(97);
    for (int it = 0; it < 100; ++it) {
        int n = rng.range(1, 12);
        auto t = random_tree(rng, n, 2);
        auto xs = canonical_x_assignment(*t);
        auto rank = inorder_ranks_binary(*t);
        // x-order equals in-order rank order; exactly n distinct consecutive columns
        std::vector<BigInt> sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i) EXPECT_EQ(sorted[i], sorted[0] + i);
        for (int v = 0; v < n; ++v)
            EXPECT_EQ(xs[v] - sorted[0], BigInt(rank[v]));
    }
}

TEST(ThreeStepBinary, WidthFormulaExample) {
    auto t = parse_tree("(()())");
    auto g0 = make(t, {{0, 1}, {-1, 0}, {1, 0}});
    auto g1 = make(t, {{5, 1}, {4, 0}, {6, 0}});
    auto m = morph_upward_3step(t, g0, g1);
    EXPECT_EQ(m.steps(), 3);
    EXPECT_EQ(m.keyframes[1].pos[0], PtI(BigInt(0), BigInt(1)));
    EXPECT_EQ(m.keyframes[1].pos[1], PtI(BigInt(-1), BigInt(0)));
    EXPECT_EQ(m.keyframes[1].pos[2], PtI(BigInt(1), BigInt(0)));
    auto rep = verify_morph(m, MorphStandard::UpwardPlanar);
    EXPECT_TRUE(rep.all_green());
    EXPECT_EQ(rep.width, BigInt(3));  // max{w0, w1, n} = 3
}

TEST(ThreeStepBinary, Theorem2Conformance) {
    Rng rng(101);
    for (int it = 0; it < 200; ++it) {
        int n = rng.range(1, 10);
        auto t = random_tree(rng, n, 2);
        auto g0 = random_upward_drawing(rng, t, 12);
        auto g1 = random_upward_drawing(rng, t, 12);
        auto m = morph_upward_3step(t, g0, g1);

        EXPECT_EQ(m.steps(), 3);
        auto rep = verify_morph(m, MorphStandard::UpwardPlanar);
        EXPECT_TRUE(rep.all_green()) << "n=" << n << " it=" << it;

        auto [w0, h0] = bounding_extent(g0);
        auto [w1, h1] = bounding_extent(g1);
        EXPECT_EQ(rep.height, std::max(h0, h1));
        EXPECT_EQ(rep.width, std::max(std::max(w0, w1), BigInt(n)));

        // the x-assignment is structure-only: the middle step moves nodes vertically
        for (int v = 0; v < n; ++v)
            EXPECT_EQ(m.keyframes[1].pos[v].x, m.keyframes[2].pos[v].x);
        // outer steps are unidirectional horizontal
        EXPECT_TRUE(is_unidirectional_equal_y(m.keyframes[0], m.keyframes[1]));
        EXPECT_TRUE(is_unidirectional_equal_y(m.keyframes[2], m.keyframes[3]));
    }
}

TEST(ThreeStepGeneral, SingleNodeAndBinaryCrossCheck) {
    auto single = parse_tree("()");
    auto gs = make(single, {{2, 2}});
    auto ms = morph_upward_3step_general(single, gs, gs);
    EXPECT_EQ(ms.steps(), 3);
    EXPECT_TRUE(verify_morph(ms, MorphStandard::UpwardPlanar).all_green());

    Rng rng(103);
    for (int it = 0; it < 40; ++it) {
        int n = rng.range(1, 9);
        auto t = random_tree(rng, n, 2);
        auto g0 = random_upward_drawing(rng, t, 10);
        auto g1 = random_upward_drawing(rng, t, 10);
        auto mg = morph_upward_3step_general(t, g0, g1);
        EXPECT_TRUE(verify_morph(mg, MorphStandard::UpwardPlanar).all_green());
        auto mb = morph_upward_3step(t, g0, g1);
        EXPECT_TRUE(verify_morph(mb, MorphStandard::UpwardPlanar).all_green());
    }
}

TEST(ThreeStepGeneral, UnboundedDegreeConformance) {
    Rng rng(107);
    for (int it = 0; it < 60; ++it) {
        int n = rng.range(1, 9);
        auto t = random_tree(rng, n);
        auto g0 = random_upward_drawing(rng, t, 10);
        auto g1 = random_upward_drawing(rng, t, 10);
        auto m = morph_upward_3step_general(t, g0, g1);
        EXPECT_EQ(m.steps(), 3);
        EXPECT_TRUE(verify_morph(m, MorphStandard::UpwardPlanar).all_green()) << "it=" << it;
        for (int v = 0; v < n; ++v)
            EXPECT_EQ(m.keyframes[1].pos[v].x, m.keyframes[2].pos[v].x);
        EXPECT_TRUE(is_unidirectional_equal_y(m.keyframes[0], m.keyframes[1]));
        EXPECT_TRUE(is_unidirectional_equal_y(m.keyframes[2], m.keyframes[3]));
    }
}

TEST(ExponentialExample, FrozenCoordinates) {
    auto [t2, g2] = gen_exponential_example(2, 2);
    EXPECT_EQ(g2.pos[0], PtI(BigInt(0), BigInt(0)));
    EXPECT_EQ(g2.pos[1], PtI(BigInt(1), BigInt(-1)));
    EXPECT_EQ(g2.pos[2], PtI(BigInt(3), BigInt(-2)));

    auto [t4, g4] = gen_exponential_example(4, 2);
    EXPECT_EQ(g4.pos[1], PtI(BigInt(1), BigInt(-1)));
    EXPECT_EQ(g4.pos[2], PtI(BigInt(3), BigInt(-2)));
    EXPECT_EQ(g4.pos[3], PtI(BigInt(2), BigInt(-1)));
    EXPECT_EQ(g4.pos[4], PtI(BigInt(5), BigInt(-2)));
}

TEST(ExponentialExample, InstancesValid) {
    for (int children = 2; children <= 10; ++children)
        for (int h = 2; h <= 4; ++h) {
            auto [t, g] = gen_exponential_example(children, h);
            EXPECT_TRUE(is_planar(g));
            EXPECT_TRUE(is_strictly_upward(g));
            EXPECT_TRUE(is_order_preserving(g));
        }
}

TEST(ExponentialExample, WidthGrowsGeometrically) {
    // h = 2, n in {5,7,9,11}: width of Gamma' grows at least as 2^((n-1)/4)
    std::vector<BigInt> widths;
    for (int n : {5, 7, 9, 11}) {
        auto [t, g] = gen_exponential_example(n - 1, 2);
        auto m = morph_upward_3step_general(t, g, g);
        auto [w, h] = bounding_extent(m.keyframes[1]);
        widths.push_back(w);
        BigInt lower = BigInt(1) << ((n - 1) / 4);
        EXPECT_GE(w, lower) << "n=" << n;
    }
    for (std::size_t i = 1; i < widths.size(); ++i)
        EXPECT_GE(Rat(widths[i]) / Rat(widths[i - 1]), Rat(18, 10));
}
