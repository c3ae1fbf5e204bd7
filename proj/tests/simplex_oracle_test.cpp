#include "tropdisc/simplex_oracle.hpp"

#include <gtest/gtest.h>

using namespace tropdisc;

namespace {

TEST(OracleBreakdown, PinnedTotals) {
  auto o2 = oracle_breakdown(2);
  EXPECT_EQ(o2.e_total, 2);
  EXPECT_EQ(o2.d_total, 2);
  EXPECT_EQ(o2.a_total, 0);
  EXPECT_EQ(o2.grand, 4);

  auto o3 = oracle_breakdown(3);
  EXPECT_EQ(o3.e_total, 16);
  EXPECT_EQ(o3.d_total, 16);
  EXPECT_EQ(o3.a_total, 0);
  EXPECT_EQ(o3.grand, 32);

  auto o4 = oracle_breakdown(4);
  EXPECT_EQ(o4.a_total, 2);
  EXPECT_EQ(o4.grand, 108);

  EXPECT_THROW(oracle_breakdown(1), std::domain_error);
}

TEST(OracleBreakdown, EmptyAFamiliesAtCubic) {
  // Q' needs l >= 2 and j + l <= d - i - 1, impossible for d = 3
  auto o3 = oracle_breakdown(3);
  EXPECT_EQ(o3.a_qprime, 0);
  EXPECT_EQ(o3.a_qsecond, 0);
}

TEST(OracleBreakdown, GrandTotalMatchesClosedForm) {
  for (long d = 2; d <= 8; ++d) {
    auto o = oracle_breakdown(d);
    EXPECT_EQ(o.grand, Int(4) * (d - 1) * (d - 1) * (d - 1)) << d;
  }
}

TEST(OracleBreakdown, AsymptoticShares) {
  // E/d^3 -> 8/3, D/d^3 -> 1, A/d^3 -> 1/3; the O(d^2) corrections carry
  // large constants, so the 5% window is only reached around d = 200
  auto within = [](long d, const Int& v, const Rat& target, const Rat& tol) {
    Rat ratio = Rat(v) / Rat(Int(d) * d * d);
    Rat lo = target * (Rat(1) - tol), hi = target * (Rat(1) + tol);
    return lo <= ratio && ratio <= hi;
  };
  auto o20 = oracle_breakdown(20);
  EXPECT_TRUE(within(20, o20.e_total, Rat(8, 3), Rat(20, 100)));
  EXPECT_TRUE(within(20, o20.d_total, Rat(1), Rat(20, 100)));
  EXPECT_TRUE(within(20, o20.a_total, Rat(1, 3), Rat(30, 100)));
  auto o200 = oracle_breakdown(200);
  EXPECT_TRUE(within(200, o200.e_total, Rat(8, 3), Rat(5, 100)));
  EXPECT_TRUE(within(200, o200.d_total, Rat(1), Rat(5, 100)));
  EXPECT_TRUE(within(200, o200.a_total, Rat(1, 3), Rat(5, 100)));
}

TEST(CrossCheck, QuadricAndCubicPass) {
  auto c2 = cross_check(2);
  EXPECT_TRUE(c2.pass) << (c2.diffs.empty() ? "" : c2.diffs[0]);
  EXPECT_TRUE(c2.diffs.empty());
  auto c3 = cross_check(3);
  EXPECT_TRUE(c3.pass) << (c3.diffs.empty() ? "" : c3.diffs[0]);
  EXPECT_EQ(c3.enum_total, 32);
}

TEST(CrossCheck, MismatchNeverSilent) {
  CheckReport rep;
  rep.mismatch("sample", Int(3), Int(4));
  EXPECT_FALSE(rep.pass);
  ASSERT_EQ(rep.diffs.size(), 1u);
  EXPECT_NE(rep.diffs[0].find("sample"), std::string::npos);
}

}  // namespace
