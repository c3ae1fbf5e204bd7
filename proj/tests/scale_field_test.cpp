#include "tropdisc/scale_field.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropdisc;

namespace {

LatticePoint pt(long x, long y, long z) { return {Int(x), Int(y), Int(z)}; }

std::mt19937 rng(987654);

ScaleValue random_scale_value(int max_scale = 5) {
  std::uniform_int_distribution<int> nterms(0, 3);
  std::uniform_int_distribution<int> scale(0, max_scale);
  std::uniform_int_distribution<int> deg(0, 2);
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  ScaleValue v;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    EpsPoly p = EpsPoly::monomial(deg(rng), Rat(num(rng), den(rng)));
    v = v + ScaleValue::term(scale(rng), p);
  }
  return v;
}

TEST(EpsInner, OrderExamples) {
  // (0,1,0) - (0,0,1): eps - eps^2, positive, so (0,0,1) comes first
  EpsPoly d = eps_inner(pt(0, 1, 0)) - eps_inner(pt(0, 0, 1));
  EXPECT_EQ(d.sign(), 1);
  EXPECT_TRUE(eps_inner(pt(0, 0, 0)).is_zero());
  EXPECT_EQ(eps_inner(pt(-1, 2, 0)).sign(), -1);
}

TEST(EpsInner, ZeroOnlyAtZeroAndLexOrder) {
  std::uniform_int_distribution<long> coord(-4, 4);
  for (int rep = 0; rep < 500; ++rep) {
    LatticePoint a = pt(coord(rng), coord(rng), coord(rng));
    LatticePoint b = pt(coord(rng), coord(rng), coord(rng));
    EpsPoly d = eps_inner(a) - eps_inner(b);
    if (a == b) {
      EXPECT_TRUE(d.is_zero());
    } else {
      EXPECT_EQ(d.sign() < 0, lex_less<3>(a, b));
    }
  }
}

TEST(Compare, ScaleDominance) {
  ScaleValue m1 = ScaleValue::scale_unit(1);
  EXPECT_EQ(compare(m1, ScaleValue(Rat(1000))), 1);
  ScaleValue eps_m2 = ScaleValue::term(2, EpsPoly::monomial(1, Rat(1)));
  ScaleValue seven_m1 = ScaleValue::scale_unit(1) * Rat(7);
  EXPECT_EQ(compare(eps_m2, seven_m1), 1);
  ScaleValue v = -ScaleValue::scale_unit(3) + ScaleValue::scale_unit(2);
  EXPECT_EQ(compare(v, ScaleValue()), -1);
  EXPECT_EQ(sign(v), -1);
}

TEST(Compare, TopDominatesEverything) {
  ScaleValue big = ScaleValue::scale_unit(40) * Rat(1000000);
  EXPECT_LT(compare(big, ScaleValue::top()), 0);
  EXPECT_GT(sign(ScaleValue::top() - big), 0);
}

TEST(Compare, TotalOrderProperties) {
  for (int rep = 0; rep < 2000; ++rep) {
    ScaleValue a = random_scale_value();
    ScaleValue b = random_scale_value();
    ScaleValue c = random_scale_value();
    int ab = compare(a, b), ba = compare(b, a);
    EXPECT_EQ(ab, -ba);
    if (ab == 0) EXPECT_TRUE(a == b);
    // transitivity
    if (compare(a, b) <= 0 && compare(b, c) <= 0)
      EXPECT_LE(compare(a, c), 0);
    // additivity
    ScaleValue d = random_scale_value();
    if (compare(a, b) < 0) EXPECT_LT(compare(a + d, b + d), 0);
  }
}

TEST(Compare, NumericInstantiationAgrees) {
  // eps = 1/E, M_s = B^s with B >> E >> 1, doubling until stable
  for (int rep = 0; rep < 300; ++rep) {
    ScaleValue a = random_scale_value();
    ScaleValue b = random_scale_value();
    int symbolic = compare(a, b);
    int last = -2, stable = 0;
    Rat e(64);
    for (int round = 0; round < 40 && stable < 2; ++round) {
      Rat bb = e * e * e * e;
      Rat va = a.eval_numeric(e, bb, 8);
      Rat vb = b.eval_numeric(e, bb, 8);
      int numeric = va < vb ? -1 : (vb < va ? 1 : 0);
      if (numeric == last)
        ++stable;
      else
        stable = 0;
      last = numeric;
      e *= 2;
    }
    EXPECT_EQ(last, symbolic);
  }
}

TEST(ScaleValue, ArithmeticAndLinearity) {
  ScaleValue a = ScaleValue::scale_unit(2) * Rat(3) + ScaleValue(Rat(1));
  ScaleValue b = a - a;
  EXPECT_TRUE(b.is_zero());
  EXPECT_EQ((a * Int(2)).coeff(2).coeff(0), Rat(6));
  EXPECT_EQ((a / Int(3)).coeff(2).coeff(0), Rat(1));
  EpsPoly e2 = EpsPoly::monomial(2, Rat(1));
  ScaleValue c = a * e2;
  EXPECT_EQ(c.coeff(2).coeff(2), Rat(3));
}

TEST(ScaleValue, DebugString) {
  ScaleValue v = ScaleValue::term(2, EpsPoly::monomial(1, Rat(3))) +
                 ScaleValue(Rat(-1, 2));
  std::string s = v.str();
  EXPECT_NE(s.find("M2"), std::string::npos);
  EXPECT_NE(s.find("e"), std::string::npos);
  EXPECT_EQ(ScaleValue().str(), "0");
}

}  // namespace
