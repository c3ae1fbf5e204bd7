#include "tropdisc/circuit_engine.hpp"

#include <gtest/gtest.h>

using namespace tropdisc;

namespace {

LatticePoint pt(long x, long y, long z) { return {Int(x), Int(y), Int(z)}; }

std::vector<LatticePoint> sorted(std::vector<LatticePoint> v) {
  std::sort(v.begin(), v.end(), lex_less<3>);
  return v;
}

TEST(ClassifyCircuit, TypeE) {
  auto c = classify_circuit({pt(0, 0, 0), pt(0, 0, 1), pt(0, 0, 2)});
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->first, CircuitType::E);
  // non-primitive step is not a circuit of the subdivision
  EXPECT_FALSE(
      classify_circuit({pt(0, 0, 0), pt(0, 0, 2), pt(0, 0, 4)}).has_value());
  // unequal spacing is not type E
  EXPECT_FALSE(
      classify_circuit({pt(0, 0, 0), pt(0, 0, 1), pt(0, 0, 3)}).has_value());
}

TEST(ClassifyCircuit, TypeD) {
  auto c = classify_circuit(
      sorted({pt(0, 1, 0), pt(0, 1, 1), pt(1, 0, 0), pt(1, 0, 1)}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->first, CircuitType::D);
  // area-4 parallelogram is not unit
  EXPECT_FALSE(classify_circuit(
                   sorted({pt(0, 0, 0), pt(2, 0, 0), pt(0, 2, 0), pt(2, 2, 0)}))
                   .has_value());
}

TEST(ClassifyCircuit, TypeC) {
  auto c = classify_circuit(
      sorted({pt(1, 0, 0), pt(2, 1, 0), pt(0, 2, 0), pt(1, 1, 0)}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->first, CircuitType::C);
}

TEST(ClassifyCircuit, TypeB) {
  auto c = classify_circuit(sorted(
      {pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(2, 2, 5), pt(1, 1, 2)}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->first, CircuitType::B);
}

TEST(ClassifyCircuit, TypeA) {
  auto c = classify_circuit(sorted(
      {pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1)}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->first, CircuitType::A);
  auto c2 = classify_circuit(sorted(
      {pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 2, 3)}));
  ASSERT_TRUE(c2.has_value());
  EXPECT_EQ(c2->first, CircuitType::A);
}

TEST(ClassifyCircuit, RejectsNonCircuits) {
  EXPECT_FALSE(
      classify_circuit({pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0)}).has_value());
  // affinely independent 4 points
  EXPECT_FALSE(classify_circuit(
                   {pt(0, 0, 0), pt(0, 0, 1), pt(0, 1, 0), pt(1, 0, 0)})
                   .has_value());
}

TEST(BceSurface, CubicMidEdgePoint) {
  auto s = order_support(simplex_polytope(3));
  int k = s.index_of(pt(1, 0, 1));
  auto rec = bce_surface(s, gamma_k(s, k));
  ASSERT_TRUE(rec.has_value());
  EXPECT_EQ(rec->circuit.type, CircuitType::E);
  EXPECT_EQ(rec->circuit.points,
            (std::vector<LatticePoint>{pt(1, 0, 0), pt(1, 0, 1), pt(1, 0, 2)}));
  EXPECT_TRUE(rec->circuit_on_boundary);
}

TEST(BceSurface, QuadricMidEdgePoint) {
  auto s = order_support(simplex_polytope(2));
  int k = s.index_of(pt(0, 1, 1));
  auto rec = bce_surface(s, gamma_k(s, k));
  ASSERT_TRUE(rec.has_value());
  EXPECT_EQ(rec->circuit.type, CircuitType::E);
}

TEST(BceSurface, VertexRejected) {
  auto s = order_support(simplex_polytope(3));
  EXPECT_THROW(bce_surface(s, gamma_k(s, 0)), std::invalid_argument);
}

TEST(BceSurface, InteriorPointGivesTypeB) {
  // bipyramid-free example: the (2,2,5) tetrahedron has a unique interior
  // point; skipping it puts w_k inside the single placing cell
  auto poly = Polytope::from_vertices(
      {pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(2, 2, 5)});
  auto s = order_support(poly);
  int k = s.index_of(pt(1, 1, 2));
  ASSERT_GE(k, 0);
  auto rec = bce_surface(s, gamma_k(s, k));
  ASSERT_TRUE(rec.has_value());
  EXPECT_EQ(rec->circuit.type, CircuitType::B);
}

TEST(BceSurface, TriangleInteriorGivesTypeC) {
  // bipyramid over the canonical C triangle: w_k = (1,1,0) sits in the
  // interior of the shared 2-face of the two placing cells
  auto poly = Polytope::from_vertices(
      {pt(1, 0, 0), pt(2, 1, 0), pt(0, 2, 0), pt(1, 1, 1), pt(2, 2, -1)});
  auto s = order_support(poly);
  ASSERT_EQ(s.size(), 6);
  int k = s.index_of(pt(1, 1, 0));
  ASSERT_GE(k, 0);
  auto rec = bce_surface(s, gamma_k(s, k));
  ASSERT_TRUE(rec.has_value());
  EXPECT_EQ(rec->circuit.type, CircuitType::C);
  EXPECT_EQ(rec->circuit.points,
            sorted({pt(1, 0, 0), pt(2, 1, 0), pt(0, 2, 0), pt(1, 1, 0)}));
  EXPECT_FALSE(rec->circuit_on_boundary);
}

TEST(DCandidates, CubicFamilies) {
  auto s = order_support(simplex_polytope(3));
  {
    int k = s.index_of(pt(1, 1, 0));
    auto recs = d_candidates(s, gamma_k(s, k));
    EXPECT_EQ(recs.size(), 2u);  // Q_0, Q_1
  }
  {
    int k = s.index_of(pt(0, 3, 0));
    auto recs = d_candidates(s, gamma_k(s, k));
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].circuit.points,
              sorted({pt(0, 3, 0), pt(0, 2, 1), pt(1, 1, 0), pt(1, 0, 1)}));
  }
}

TEST(DCandidates, GapPathsAreEmpty) {
  for (int d : {2, 3}) {
    auto s = order_support(simplex_polytope(d));
    for (int k = 1; k <= s.N; ++k)
      EXPECT_TRUE(d_candidates(s, gamma_kk1(s, k)).empty());
  }
}

TEST(ACandidates, CubicHasNone) {
  auto s = order_support(simplex_polytope(3));
  for (const auto& path : marked_paths(s))
    EXPECT_TRUE(a_candidates(s, path).empty()) << path.name();
}

TEST(ACandidates, QuarticFamilyAtTopEdge) {
  auto s = order_support(simplex_polytope(4));
  int k = s.index_of(pt(0, 4, 0));
  auto recs = a_candidates(s, gamma_k(s, k));
  // Q'_{1,2} and Q''_{1,0}
  ASSERT_EQ(recs.size(), 2u);
  std::vector<LatticePoint> q2 = sorted(
      {pt(0, 4, 0), pt(0, 3, 1), pt(1, 1, 0), pt(1, 1, 1), pt(1, 0, 3)});
  bool found = false;
  for (const auto& r : recs) found |= (r.circuit.points == q2);
  EXPECT_TRUE(found);
  for (const auto& r : recs) EXPECT_EQ(r.circuit.type, CircuitType::A);
}

TEST(EnumerateSurfaces, UnitSimplexEmpty) {
  EXPECT_TRUE(enumerate_surfaces(simplex_polytope(1)).empty());
}

TEST(EnumerateSurfaces, QuadricRawRecords) {
  // raw candidate records; boundary E circuits without singular-point
  // locations are filtered downstream by the multiplicity computation
  auto s = order_support(simplex_polytope(2));
  auto recs = enumerate_surfaces(simplex_polytope(2));
  std::map<CircuitType, int> by_type;
  for (const auto& r : recs) by_type[r.circuit.type]++;
  EXPECT_EQ(by_type[CircuitType::D], 1);
  EXPECT_EQ(by_type[CircuitType::E], 6);  // one per non-vertex point
  bool has_true_e = false;
  for (const auto& r : recs)
    if (r.circuit.type == CircuitType::E &&
        r.path.k == s.index_of(pt(0, 1, 1)))
      has_true_e = true;
  EXPECT_TRUE(has_true_e);
}

TEST(EnumerateSurfaces, CubicRawRecords) {
  auto s = order_support(simplex_polytope(3));
  auto recs = enumerate_surfaces(simplex_polytope(3));
  std::map<CircuitType, int> by_type;
  for (const auto& r : recs) by_type[r.circuit.type]++;
  EXPECT_EQ(by_type[CircuitType::D], 8);
  EXPECT_EQ(by_type[CircuitType::A], 0);
  // the four E surfaces with singular-point locations are all present
  for (auto wk : {pt(1, 0, 1), pt(0, 1, 2), pt(0, 2, 1), pt(1, 1, 1)}) {
    bool found = false;
    for (const auto& r : recs)
      found |= (r.circuit.type == CircuitType::E &&
                r.path.k == s.index_of(wk));
    EXPECT_TRUE(found) << to_string(wk);
  }
}

TEST(EnumerateSurfaces, DeterministicAcrossJobs) {
  auto r1 = enumerate_surfaces(simplex_polytope(3), 1);
  auto r2 = enumerate_surfaces(simplex_polytope(3), 3);
  ASSERT_EQ(r1.size(), r2.size());
  for (size_t i = 0; i < r1.size(); ++i) {
    EXPECT_EQ(r1[i].circuit.indices, r2[i].circuit.indices);
    EXPECT_EQ(r1[i].path.k, r2[i].path.k);
    EXPECT_TRUE(r1[i].path.kind == r2[i].path.kind);
  }
}

TEST(EnumerateSurfaces, RecordsAreInternallyConsistent) {
  auto s = order_support(simplex_polytope(3));
  auto recs = enumerate_surfaces(simplex_polytope(3), 1, true);
  for (const auto& r : recs) {
    // circuit relation holds exactly on the nu coefficients
    ScaleValue acc;
    for (size_t i = 0; i < r.circuit.indices.size(); ++i)
      acc = acc + r.nu.c[r.circuit.indices[i]] * r.circuit.relation.coeffs[i];
    EXPECT_TRUE(acc.is_zero());
    EXPECT_EQ(covered_volume(r.subdivision, s.points), 27);
  }
}

}  // namespace
