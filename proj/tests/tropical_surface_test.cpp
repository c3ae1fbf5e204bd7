#include "tropdisc/tropical_surface.hpp"

#include <gtest/gtest.h>

using namespace tropdisc;

namespace {

LatticePoint pt(long x, long y, long z) { return {Int(x), Int(y), Int(z)}; }

// Heights for a pure placing run: the i-th inserted point gets scale M_i.
std::vector<ScaleValue> placing_heights(size_t n) {
  std::vector<ScaleValue> h(n);
  for (size_t i = 1; i < n; ++i) h[i] = ScaleValue::scale_unit(static_cast<int>(i));
  return h;
}

TEST(OrderSupport, SimplexOrders) {
  auto s1 = order_support(simplex_polytope(1));
  ASSERT_EQ(s1.points.size(), 4u);
  EXPECT_EQ(s1.points[0], pt(0, 0, 0));
  EXPECT_EQ(s1.points[1], pt(0, 0, 1));
  EXPECT_EQ(s1.points[2], pt(0, 1, 0));
  EXPECT_EQ(s1.points[3], pt(1, 0, 0));
  EXPECT_EQ(s1.N, 2);

  auto s2 = order_support(simplex_polytope(2));
  EXPECT_EQ(s2.N, 8);
  EXPECT_EQ(s2.points[0], pt(0, 0, 0));
  EXPECT_EQ(s2.points[1], pt(0, 0, 1));
  EXPECT_EQ(s2.points[2], pt(0, 0, 2));
  EXPECT_EQ(s2.points[3], pt(0, 1, 0));
  // first point is the lex-min vertex
  EXPECT_TRUE(s2.polytope.is_vertex(s2.points[0]));
}

TEST(MarkedPaths, Counts) {
  EXPECT_EQ(marked_paths(order_support(simplex_polytope(1))).size(), 6u);
  EXPECT_EQ(marked_paths(order_support(simplex_polytope(2))).size(), 18u);
  EXPECT_EQ(marked_paths(order_support(simplex_polytope(3))).size(), 38u);
}

TEST(MarkedPaths, EdgeCountAndShape) {
  auto s = order_support(simplex_polytope(2));
  for (const auto& p : marked_paths(s)) {
    EXPECT_EQ(p.edges.size(), static_cast<size_t>(s.N)) << p.name();
    for (const auto& [a, b] : p.edges) EXPECT_LT(a, b);
  }
  auto g3 = gamma_k(s, 3);
  // the gap edge skipping w_3 joins w_2 and w_4
  bool has = false;
  for (const auto& e : g3.edges) has |= (e.first == 2 && e.second == 4);
  EXPECT_TRUE(has);
}

TEST(NuFromPath, TwoStepRecurrence) {
  auto s = order_support(simplex_polytope(1));
  auto path = gamma_k(s, 1);  // skips w_1 = (0,0,1)
  auto nu = nu_from_path(s, path);
  EXPECT_TRUE(nu.defined[0]);
  EXPECT_TRUE(nu.defined[2]);
  EXPECT_FALSE(nu.defined[1]);
  // first edge [w_0, w_2] carries M_1: c_2 = -M_1 <w_2 - w_0, v>
  ScaleValue expect2 = -ScaleValue::term(1, eps_inner(pt(0, 1, 0)));
  EXPECT_TRUE(nu.c[2] == expect2);
  // second edge [w_2, w_3] carries M_2
  ScaleValue expect3 =
      expect2 - ScaleValue::term(2, eps_inner(pt(1, 0, 0)) - eps_inner(pt(0, 1, 0)));
  EXPECT_TRUE(nu.c[3] == expect3);
}

TEST(NuFromPath, CircuitRelationsDetermineSkippedPoint) {
  auto s = order_support(simplex_polytope(2));
  // E circuit {w_0=(0,0,0), w_1=(0,0,1), w_2=(0,0,2)} with path Gamma_1:
  // midpoint height is the average of the endpoints.
  auto path = gamma_k(s, 1);
  CircuitRelation circ{{0, 1, 2}, AffineRelation{{Int(1), Int(-2), Int(1)}}};
  auto nu = nu_from_path(s, path, circ);
  EXPECT_TRUE(nu.defined[1]);
  EXPECT_TRUE(nu.c[1] * Int(2) == nu.c[0] + nu.c[2]);

  // D relation c_k = c_i + c_l - c_j on {w_3,w_4,w_6,w_7}, path Gamma_6
  auto path6 = gamma_k(s, 6);
  CircuitRelation circd{{3, 4, 6, 7},
                        AffineRelation{{Int(1), Int(-1), Int(-1), Int(1)}}};
  auto nud = nu_from_path(s, path6, circd);
  EXPECT_TRUE(nud.defined[6]);
  EXPECT_TRUE(nud.c[6] == nud.c[3] + nud.c[7] - nud.c[4]);
}

TEST(NuFromPath, GapPathNeedsCircuit) {
  auto s = order_support(simplex_polytope(2));
  EXPECT_THROW(nu_from_path(s, gamma_kk1(s, 3)), std::invalid_argument);
}

TEST(Placing, FourIndependentPointsGiveOneTetrahedron) {
  std::vector<LatticePoint> pts = {pt(0, 0, 0), pt(0, 0, 1), pt(0, 1, 0),
                                   pt(1, 0, 0)};
  auto sub = placing_triangulation(pts);
  ASSERT_EQ(sub.cells.size(), 1u);
  EXPECT_EQ(sub.cells[0], (std::vector<int>{0, 1, 2, 3}));
}

TEST(Placing, DimensionErrorOnFlatInput) {
  std::vector<LatticePoint> pts = {pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0),
                                   pt(1, 1, 0)};
  EXPECT_THROW(placing_triangulation(pts), degeneracy_error);
}

TEST(Placing, MatchesLowerHullOfScaleHeights) {
  // derived oracle: the placing triangulation equals the lower hull of the
  // superincreasing heights M_i, certified support by support
  auto s = order_support(simplex_polytope(2));
  for (int skip : {4, 6, 8}) {
    std::vector<int> order;
    for (int i = 0; i < s.size(); ++i)
      if (i != skip) order.push_back(i);
    auto sub = placing_triangulation(s.points, order);
    // heights follow insertion order
    std::vector<ScaleValue> h(s.points.size());
    for (size_t j = 0; j < order.size(); ++j)
      h[order[j]] = ScaleValue::scale_unit(static_cast<int>(j));
    EXPECT_TRUE(verify_regular(sub, s.points, order, h));
    EXPECT_EQ(covered_volume(sub, s.points), 8);
    // all inserted points appear as cell vertices
    std::set<int> used;
    for (const auto& c : sub.cells) used.insert(c.begin(), c.end());
    EXPECT_EQ(used.size(), order.size());
  }
}

TEST(Placing, PrefixStability) {
  auto s = order_support(simplex_polytope(2));
  SubdivisionBuilder b(&s.points);
  std::vector<Subdivision> stages;
  for (int i = 0; i < s.size(); ++i) {
    b.add_point(i);
    stages.push_back(b.snapshot());
  }
  // top cells persist between stages of equal dimension; across a dimension
  // jump the old cells become faces of the new cones
  for (size_t t = 0; t + 1 < stages.size(); ++t) {
    if (stages[t].dim != stages[t + 1].dim) continue;
    for (const auto& c : stages[t].cells)
      EXPECT_TRUE(stages[t + 1].has_cell(c));
  }
  EXPECT_EQ(stages.back().dim, 3);
}

TEST(Placing, CubicWithoutMidpointHasLengthTwoEdge) {
  auto s = order_support(simplex_polytope(3));
  int skip = s.index_of(pt(1, 0, 1));
  ASSERT_GE(skip, 0);
  std::vector<int> order;
  for (int i = 0; i < s.size(); ++i)
    if (i != skip) order.push_back(i);
  auto sub = placing_triangulation(s.points, order);
  auto edges = subdivision_edges(sub, s.points);
  int a = s.index_of(pt(1, 0, 0));
  int b = s.index_of(pt(1, 0, 2));
  EXPECT_TRUE(edges.count({std::min(a, b), std::max(a, b)}));
  EXPECT_EQ(covered_volume(sub, s.points), 27);
}

TEST(Placing, PathEdgesAreSubdivisionEdges) {
  auto s = order_support(simplex_polytope(2));
  for (int k = 1; k <= s.N; ++k) {
    if (s.polytope.is_vertex(s.points[k])) continue;
    auto path = gamma_k(s, k);
    std::vector<int> order;
    for (int i = 0; i < s.size(); ++i)
      if (i != k) order.push_back(i);
    auto sub = placing_triangulation(s.points, order);
    EXPECT_TRUE(contains_path_edges(sub, s.points, path)) << path.name();
  }
}

TEST(VerifyRegular, RejectsPerturbedHeights) {
  auto s = order_support(simplex_polytope(2));
  std::vector<int> order(s.points.size());
  std::iota(order.begin(), order.end(), 0);
  auto sub = placing_triangulation(s.points, order);
  auto h = placing_heights(s.points.size());
  EXPECT_TRUE(verify_regular(sub, s.points, order, h));
  // break convexity: push one interior point's height far down
  auto bad = h;
  bad[4] = -ScaleValue::scale_unit(9);
  EXPECT_FALSE(verify_regular(sub, s.points, order, bad));
}

TEST(ExtendWithCell, ParallelogramAttachProducesRegularSubdivision) {
  // the type-D surface of the quadric at w_k = (1,0,0):
  // circuit {w_3,w_4,w_6,w_7} = {(0,1,0),(0,1,1),(1,0,0),(1,0,1)}
  auto s = order_support(simplex_polytope(2));
  auto path = gamma_k(s, 6);
  CircuitRelation circ{{3, 4, 6, 7},
                       AffineRelation{{Int(1), Int(-1), Int(-1), Int(1)}}};
  auto nu = nu_from_path(s, path, circ);
  ASSERT_TRUE(nu.all_defined());

  SubdivisionBuilder b(&s.points);
  for (int i = 0; i < 6; ++i)
    if (i != 6) b.add_point(i);  // prefix w_0..w_5
  auto sub = extend_with_cell(b, {6, 7}, {8, 9}, nu);

  std::vector<int> all(s.points.size());
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(covered_volume(sub, s.points), 8);
  EXPECT_TRUE(verify_regular(sub, s.points, all, nu));
  EXPECT_TRUE(contains_path_edges(sub, s.points, path));
  // the circuit parallelogram is a 2-face of some cell
  bool face = false;
  for (const auto& c : sub.cells) {
    bool contains_all = true;
    for (int i : {3, 4, 6, 7})
      contains_all &= std::binary_search(c.begin(), c.end(), i);
    face |= contains_all;
  }
  EXPECT_TRUE(face);
  // cross-check against the brute-force lower hull of nu
  auto hull = lower_hull<3, ScaleValue>(
      std::vector<Pt<3>>(s.points.begin(), s.points.end()), nu.nu_vector());
  std::vector<std::vector<int>> hull_cells;
  for (const auto& c : hull) hull_cells.push_back(c.members);
  std::sort(hull_cells.begin(), hull_cells.end());
  EXPECT_EQ(sub.cells, hull_cells);
}

TEST(MinimalFace, LocatesInteriorFaceAndEdgeMidpoint) {
  std::vector<LatticePoint> pts = {pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0),
                                   pt(0, 0, 2), pt(5, 5, 5)};
  std::vector<int> cell = {0, 1, 2, 3};
  auto face = minimal_face_containing(pts, cell, pt(0, 0, 1));
  EXPECT_EQ(face, (std::vector<int>{0, 3}));  // midpoint of [w_0, w_3]
  EXPECT_TRUE(minimal_face_containing(pts, cell, pt(2, 2, 2)).empty());
}

}  // namespace
