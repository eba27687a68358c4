#include "treemorph/upward_linear.hpp"

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

TEST(UpwardLinear, SingleNode) {
    auto t = parse_tree("()");
    auto m = morph_upward_linear(t, make(t, {{0, 0}}), make(t, {{4, 2}}));
    EXPECT_EQ(m.steps(), 1);
    EXPECT_TRUE(verify_morph(m, MorphStandard::UpwardPlanar).all_green());
}

TEST(UpwardLinear, TwoNodePathIdenticalEndpoints) {
    auto t = parse_tree("(())");
    auto g = make(t, {{0, 1}, {0, 0}});
    auto m = morph_upward_linear(t, g, g);
    EXPECT_EQ(m.steps(), 3);
    // the leaf parks at (1, 0) in the two interior keyframes
    EXPECT_EQ(m.keyframes[1].pos[1], PtI(BigInt(1), BigInt(0)));
    EXPECT_EQ(m.keyframes[2].pos[1], PtI(BigInt(1), BigInt(0)));
    EXPECT_TRUE(verify_morph(m, MorphStandard::UpwardPlanar).all_green());
}

TEST(UpwardLinear, RejectsInvalidInputs) {
    auto t = parse_tree("(())");
    auto good = make(t, {{0, 1}, {0, 0}});
    auto flat = make(t, {{0, 0}, {1, 0}});
    EXPECT_THROW(morph_upward_linear(t, good, flat), std::invalid_argument);
}

TEST(UpwardLinear, Theorem1Conformance) {
    Rng rng(89);
    for (int it = 0; it < 200; ++it) {
        int n = rng.range(1, 10);
        auto t = random_tree(rng, n);
        auto g0 = random_upward_drawing(rng, t, 12);
        auto g1 = random_upward_drawing(rng, t, 12);
        auto m = morph_upward_linear(t, g0, g1);

        EXPECT_EQ(m.steps(), 2 * n - 1);

        auto rep = verify_morph(m, MorphStandard::UpwardPlanar);
        EXPECT_TRUE(rep.all_green()) << "n=" << n << " iteration " << it;

        auto [w0, h0] = bounding_extent(g0);
        auto [w1, h1] = bounding_extent(g1);
        EXPECT_EQ(rep.height, std::max(h0, h1));
        EXPECT_LE(rep.width, std::max(w0, w1) + n - 1);

        // vertical root-distance invariant, per keyframe and node
        int root = t->root();
        for (const auto& kf : m.keyframes)
            for (int v = 0; v < n; ++v) {
                BigInt dv = abs(kf.pos[v].y - kf.pos[root].y);
                BigInt d0 = abs(g0.pos[v].y - g0.pos[root].y);
                BigInt d1 = abs(g1.pos[v].y - g1.pos[root].y);
                EXPECT_LE(dv, std::max(d0, d1));
            }

        // Property 1 holds on every keyframe (the keyframes are valid upward drawings)
        for (const auto& kf : m.keyframes) EXPECT_TRUE(check_rightmost_region_empty(kf));
    }
}
