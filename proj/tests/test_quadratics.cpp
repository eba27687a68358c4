#include "treemorph/quadratics.hpp"

#include <gtest/gtest.h>

using namespace treemorph;

TEST(Numeric, FloorDivSqrt) {
    // floor(a / sqrt(l)) over a small exhaustive range, double-checked by definition
    for (long l = 1; l <= 30; ++l)
        for (long a = -50; a <= 50; ++a) {
            BigInt k = floor_div_sqrt(BigInt(a), BigInt(l));
            // k <= a/sqrt(l) < k+1  <=>  k*sqrt(l) <= a and a < (k+1)*sqrt(l)
            // compare via squares with sign care
            auto le = [&](const BigInt& m, long v) {  // m*sqrt(l) <= v ?
                if (m >= 0 && v < 0) return false;
                if (m < 0 && v >= 0) return true;
                BigInt lhs = m * m * l, rhs = BigInt(v) * BigInt(v);
                if (m >= 0) return lhs <= rhs;
                return lhs >= rhs;
            };
            EXPECT_TRUE(le(k, a)) << a << " " << l;
            EXPECT_FALSE(le(k + 1, a)) << a << " " << l;
        }
}

TEST(Numeric, SqrtEnclosureAndUpper) {
    auto [lo, hi] = sqrt_enclosure(Rat(2), 48);
    EXPECT_LT(lo * lo, Rat(2));
    EXPECT_GT(hi * hi, Rat(2));
    EXPECT_LT(hi - lo, Rat(BigInt(1), BigInt(1) << 40));

    EXPECT_EQ(sqrt_upper(Rat(16, 9)), Rat(4, 3));  // exact on perfect squares
    Rat u = sqrt_upper(Rat(5), 32);
    EXPECT_GE(u * u, Rat(5));
}

TEST(Numeric, SignPlusRoot) {
    EXPECT_EQ(sign_plus_root(BigInt(0), BigInt(0), BigInt(7)), 0);
    EXPECT_EQ(sign_plus_root(BigInt(3), BigInt(0), BigInt(7)), 1);
    EXPECT_EQ(sign_plus_root(BigInt(-3), BigInt(1), BigInt(8)), -1);   // sqrt(8) < 3
    EXPECT_EQ(sign_plus_root(BigInt(-3), BigInt(1), BigInt(10)), 1);   // sqrt(10) > 3
    EXPECT_EQ(sign_plus_root(BigInt(-3), BigInt(1), BigInt(9)), 0);
    EXPECT_EQ(sign_plus_root(BigInt(3), BigInt(-1), BigInt(10)), -1);
}

TEST(Quadratics, RealRoots) {
    // (t-1)(t-2) = t^2 - 3t + 2
    auto r = real_roots(QuadPoly{BigInt(1), BigInt(-3), BigInt(2)});
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(*r[0].exact_rational(), Rat(1));
    EXPECT_EQ(*r[1].exact_rational(), Rat(2));

    // -(t-1)(t-2): same roots, negative leading coefficient, still ascending
    auto rn = real_roots(QuadPoly{BigInt(-1), BigInt(3), BigInt(-2)});
    ASSERT_EQ(rn.size(), 2u);
    EXPECT_EQ(*rn[0].exact_rational(), Rat(1));
    EXPECT_EQ(*rn[1].exact_rational(), Rat(2));

    // double root (2t-1)^2
    auto rd = real_roots(QuadPoly{BigInt(4), BigInt(-4), BigInt(1)});
    ASSERT_EQ(rd.size(), 1u);
    EXPECT_EQ(*rd[0].exact_rational(), Rat(1, 2));

    // no real roots
    EXPECT_TRUE(real_roots(QuadPoly{BigInt(1), BigInt(0), BigInt(1)}).empty());

    // linear
    auto rl = real_roots(QuadPoly{BigInt(0), BigInt(2), BigInt(-5)});
    ASSERT_EQ(rl.size(), 1u);
    EXPECT_EQ(*rl[0].exact_rational(), Rat(5, 2));

    // t^2 - 2: irrational pair
    auto ri = real_roots(QuadPoly{BigInt(1), BigInt(0), BigInt(-2)});
    ASSERT_EQ(ri.size(), 2u);
    EXPECT_FALSE(ri[0].exact_rational().has_value());
    EXPECT_LT(ri[0].sign(), 0);
    EXPECT_GT(ri[1].sign(), 0);
    EXPECT_TRUE(ri[1].in_open_01() == false);
    auto [lo, hi] = ri[1].enclosure();
    EXPECT_LT(lo, hi);
    EXPECT_LT(lo * lo, Rat(2));
    EXPECT_GT(hi * hi, Rat(2));
}

TEST(Quadratics, SignOfQuadAtAlgebraicRoot) {
    // tau = sqrt(2): evaluate f(t) = t^2 - t - 1 at tau: 2 - sqrt(2) - 1 = 1 - sqrt(2) < 0
    QuadExtNumber tau{BigInt(0), BigInt(1), BigInt(1), BigInt(2)};
    EXPECT_EQ(tau.sign_of_quad(QuadPoly{BigInt(1), BigInt(-1), BigInt(-1)}), -1);
    // f(t) = t^2 - 2 at tau: exact zero
    EXPECT_EQ(tau.sign_of_quad(QuadPoly{BigInt(1), BigInt(0), BigInt(-2)}), 0);
    // f(t) = t at tau: positive
    EXPECT_EQ(tau.sign_of_quad(QuadPoly{BigInt(0), BigInt(1), BigInt(0)}), 1);
    // tau' = (89 - sqrt(3601))/60 is in (0,1)
    QuadExtNumber tau2{BigInt(89), BigInt(-1), BigInt(60), BigInt(3601)};
    EXPECT_TRUE(tau2.in_open_01());
}

TEST(Quadratics, CommonLinearRoot) {
    // x(t) = 2t - 1, y(t) = 4t - 2: common root 1/2
    auto r = common_linear_root_01(LinPoly{BigInt(2), BigInt(-1)}, LinPoly{BigInt(4), BigInt(-2)});
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, Rat(1, 2));
    // inconsistent
    EXPECT_FALSE(common_linear_root_01(LinPoly{BigInt(2), BigInt(-1)}, LinPoly{BigInt(0), BigInt(3)})
                     .has_value());
    // root outside (0,1)
    EXPECT_FALSE(common_linear_root_01(LinPoly{BigInt(1), BigInt(-2)}, LinPoly{BigInt(1), BigInt(-2)})
                     .has_value());
    // one polynomial identically zero
    auto r2 = common_linear_root_01(LinPoly{BigInt(0), BigInt(0)}, LinPoly{BigInt(4), BigInt(-1)});
    ASSERT_TRUE(r2.has_value());
    EXPECT_EQ(*r2, Rat(1, 4));
}
