#pragma once

// mt(S, x): enhancement counts, tropical singular-point locations for
// circuits of type C and E, and lift counts. Locations are found on lower
// hulls of fiber-minimal heights after splitting off the affine function
// matching nu along the circuit; the origin fiber carries the TOP scale
// (the "-c'_0 >> max" device), which must never leak into a witness.

#include "tropdisc/circuit_engine.hpp"

namespace tropdisc {

// ---------------------------------------------------------------------------
// Scale-field lower hull with lazy side predicates (means the same cells as
// lower_hull<N, ScaleValue>, but orders of magnitude cheaper).

template <int N>
std::vector<HullCell<N, ScaleValue>> scale_lower_hull(
    const std::vector<Pt<N>>& pts, const std::vector<ScaleValue>& h) {
  size_t n = pts.size();
  if (n < N + 1) throw degeneracy_error("scale_lower_hull: too few points");
  std::vector<HullCell<N, ScaleValue>> cells;
  std::set<std::vector<int>> seen;
  std::vector<int> comb(N + 1);
  std::iota(comb.begin(), comb.end(), 0);
  std::vector<std::pair<Int, const ScaleValue*>> parts;
  bool done = false;
  while (!done) {
    bool covered = false;
    for (const auto& c : cells) {
      bool all = true;
      for (int i : comb)
        if (!std::binary_search(c.members.begin(), c.members.end(), i)) {
          all = false;
          break;
        }
      if (all) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      std::array<Pt<N>, N> d{};
      for (int i = 0; i < N; ++i) d[i] = pts[comb[i + 1]] - pts[comb[0]];
      Int bdet;
      if constexpr (N == 1)
        bdet = d[0][0];
      else if constexpr (N == 2)
        bdet = det2(d[0][0], d[0][1], d[1][0], d[1][1]);
      else
        bdet = det3(d[0], d[1], d[2]);
      if (bdet != 0) {
        int bsign = bdet > 0 ? 1 : -1;
        std::vector<int> members;
        bool ok = true;
        for (size_t p = 0; p < n && ok; ++p) {
          Pt<N> dp = pts[p] - pts[comb[0]];
          std::array<Int, N + 1> coef{};
          if constexpr (N == 1) {
            coef[0] = -dp[0];
            coef[1] = d[0][0];
          } else if constexpr (N == 2) {
            coef[0] = det2(d[1][0], d[1][1], dp[0], dp[1]);
            coef[1] = -det2(d[0][0], d[0][1], dp[0], dp[1]);
            coef[2] = det2(d[0][0], d[0][1], d[1][0], d[1][1]);
          } else {
            coef[0] = -det3(d[1], d[2], dp);
            coef[1] = det3(d[0], d[2], dp);
            coef[2] = -det3(d[0], d[1], dp);
            coef[3] = det3(d[0], d[1], d[2]);
          }
          Int c0 = 0;
          for (int i = 0; i <= N; ++i) c0 -= coef[i];
          parts.clear();
          parts.push_back({c0, &h[comb[0]]});
          for (int i = 0; i < N; ++i) parts.push_back({coef[i], &h[comb[i + 1]]});
          parts.push_back({coef[N], &h[p]});
          int side = sign_combination(parts) * bsign;
          if (side < 0) ok = false;
          if (ok && side == 0) members.push_back(static_cast<int>(p));
        }
        if (ok) {
          std::sort(members.begin(), members.end());
          if (seen.insert(members).second) {
            std::array<int, N + 1> idx{};
            for (int i = 0; i <= N; ++i) idx[i] = comb[i];
            auto sup = detail::solve_support<N, ScaleValue>(pts, h, idx);
            cells.push_back(HullCell<N, ScaleValue>{members, *sup});
          }
        }
      }
    }
    int i = N;
    while (i >= 0 && comb[i] == static_cast<int>(n) - (N + 1) + i) --i;
    if (i < 0)
      done = true;
    else {
      ++comb[i];
      for (int j = i + 1; j <= N; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.members < b.members; });
  return cells;
}

// ---------------------------------------------------------------------------
// Pentatope normal form of a type-A circuit.

struct PentatopeForm {
  Int p, q;                       // p <= q, gcd = 1
  std::map<int, Int> d_exponent;  // circuit position -> d(omega)
};

inline PentatopeForm pentatope_form(const Circuit& c) {
  if (c.type != CircuitType::A)
    throw std::logic_error("pentatope_form: circuit is not of type A");
  const auto& lam = c.relation.coeffs;  // {+1, +p, +q; -1, -(p+q)} pattern
  std::vector<Int> pos;
  for (const auto& v : lam)
    if (v > 0) pos.push_back(v);
  std::sort(pos.begin(), pos.end());
  if (pos.size() != 3 || pos[0] != 1)
    throw std::logic_error("pentatope_form: relation out of pattern");
  PentatopeForm f;
  f.p = pos[1];
  f.q = pos[2];
  // roles: coefficient -(p+q) -> 000 (d = p+q), -1 -> the (1,p,q) vertex
  // (d = 1), +1 -> 100 (d = -1), +p -> 010 (d = -p), +q -> 001 (d = -q);
  // ambiguous equal coefficients are resolved in <-order, which never
  // changes |d|.
  bool used_one = false, used_p = false;
  for (size_t i = 0; i < lam.size(); ++i) {
    const Int& v = lam[i];
    if (v == -(f.p + f.q))
      f.d_exponent[static_cast<int>(i)] = f.p + f.q;
    else if (v == -1)
      f.d_exponent[static_cast<int>(i)] = 1;
    else if (v == 1 && (!used_one || f.p != 1)) {
      f.d_exponent[static_cast<int>(i)] = -1;
      used_one = true;
    } else if (v == f.p && !used_p) {
      f.d_exponent[static_cast<int>(i)] = -f.p;
      used_p = true;
    } else if (v == f.q) {
      f.d_exponent[static_cast<int>(i)] = -f.q;
    } else {
      throw std::logic_error("pentatope_form: relation out of pattern");
    }
  }
  if (f.d_exponent.size() != 5)
    throw std::logic_error("pentatope_form: role assignment failed");
  return f;
}

// ---------------------------------------------------------------------------
// Singular point locations.

struct SingularLocation {
  enum class Kind { CSegment, ETriangle, EEdgePair };
  Kind kind = Kind::ETriangle;
  // C: the hull edge projects to [seg_lo, seg_hi]
  Int seg_lo = 0, seg_hi = 0;
  // E triangle: projected cell and its normalized area
  std::array<Pt2, 3> triangle{};
  Int volume = 0;
  // witness: the gradient of Lambda'' in the normalized coordinates
  // (1 entry for C, 2 for E)
  std::vector<ScaleValue> witness;
  Int lifts = 0;  // per location (per enhancement for type C)

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::CSegment:
        os << "segment[" << seg_lo << "," << seg_hi << "]";
        break;
      case Kind::ETriangle:
        os << "triangle{" << to_string(triangle[0]) << to_string(triangle[1])
           << to_string(triangle[2]) << "}";
        break;
      case Kind::EEdgePair:
        os << "edge-pair";
        break;
    }
    return os.str();
  }
};

namespace detail {

// affine function on R^3 that matches nu on the circuit's affine hull and is
// invariant along the given transversal directions; gradient and offset are
// scale values obtained by an integer solve
struct FiberSplit {
  std::array<ScaleValue, 3> grad;
  ScaleValue offset;
  ScaleValue eval(const LatticePoint& x) const {
    ScaleValue v = offset;
    for (int i = 0; i < 3; ++i) v = v + grad[i] * x[i];
    return v;
  }
};

inline FiberSplit lambda_prime(const std::vector<LatticePoint>& span_pts,
                               const std::vector<ScaleValue>& span_vals,
                               const std::vector<LatticePoint>& invariant) {
  // rows: span differences (value differences), invariant directions (0)
  std::array<LatticePoint, 3> rows{};
  std::array<ScaleValue, 3> rhs{};
  size_t r = 0;
  for (size_t i = 1; i < span_pts.size(); ++i) {
    rows[r] = span_pts[i] - span_pts[0];
    rhs[r] = span_vals[i] - span_vals[0];
    ++r;
  }
  for (const auto& dir : invariant) {
    rows[r] = dir;
    rhs[r] = ScaleValue();
    ++r;
  }
  if (r != 3) throw std::logic_error("lambda_prime: bad span");
  Int det = det3(rows[0], rows[1], rows[2]);
  if (det == 0) throw std::logic_error("lambda_prime: degenerate system");
  FiberSplit f;
  for (int c = 0; c < 3; ++c) {
    ScaleValue acc = rhs[0] * cofactor3(rows, 0, c);
    acc = acc + rhs[1] * cofactor3(rows, 1, c);
    acc = acc + rhs[2] * cofactor3(rows, 2, c);
    f.grad[c] = acc / det;
  }
  f.offset = span_vals[0];
  for (int i = 0; i < 3; ++i)
    f.offset = f.offset - f.grad[i] * span_pts[0][i];
  return f;
}

// the six triangle families of the type-E location lemma; the last is
// parametric: conv{(-1,0),(0,1),(i,1)}, i >= 1
inline bool matches_e_triangle_family(const std::array<Pt2, 3>& t) {
  static const std::vector<std::array<Pt2, 3>> fixed = {
      {Pt2{Int(0), Int(1)}, Pt2{Int(1), Int(0)}, Pt2{Int(-1), Int(-1)}},
      {Pt2{Int(0), Int(1)}, Pt2{Int(2), Int(1)}, Pt2{Int(-1), Int(-1)}},
      {Pt2{Int(0), Int(1)}, Pt2{Int(3), Int(1)}, Pt2{Int(-1), Int(-1)}},
      {Pt2{Int(0), Int(1)}, Pt2{Int(3), Int(1)}, Pt2{Int(-3), Int(-2)}},
      {Pt2{Int(0), Int(1)}, Pt2{Int(4), Int(1)}, Pt2{Int(-2), Int(-1)}},
  };
  std::vector<Pt2> tri(t.begin(), t.end());
  for (const auto& fam : fixed)
    if (unimodular_match(tri, std::vector<Pt2>(fam.begin(), fam.end())))
      return true;
  // parametric family: M maps two vertices to (-1,0), (0,1); the third
  // lands on (i,1) for the solved i >= 1
  int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& pm : perm) {
    const Pt2& a = t[pm[0]];
    const Pt2& b = t[pm[1]];
    const Pt2& c = t[pm[2]];
    Int ds = det2(a[0], a[1], b[0], b[1]);
    if (ds == 0) continue;
    // M [a b] = [(-1,0) (0,1)]  =>  M = [[-1,0],[0,1]] * adj([a b]) / ds
    // with adj([a b]) = [[b1, -b0], [-a1, a0]] for columns a, b
    Int m00 = -b[1], m01 = b[0];
    Int m10 = -a[1], m11 = a[0];
    if (m00 % ds != 0 || m01 % ds != 0 || m10 % ds != 0 || m11 % ds != 0)
      continue;
    Mat2 m{{Pt2{m00 / ds, m01 / ds}, Pt2{m10 / ds, m11 / ds}}};
    Int dm = m.det();
    if (dm != 1 && dm != -1) continue;
    Pt2 img = m.apply(c);
    if (img[1] == 1 && img[0] >= 1) return true;
  }
  return false;
}

struct ProjectedHeights {
  std::vector<Pt2> fibers;            // distinct nonzero fiber coordinates
  std::vector<ScaleValue> heights;    // fiber minimum of nu'
  std::vector<Pt2> polygon_lattice;   // all lattice points of the projection
};

}  // namespace detail

// Type-C locations: project along the circuit plane to the z-axis, build the
// 1D fiber-minimum hull, and pick edges over the admissible segments.
inline std::vector<SingularLocation> locations_C(const OrderedSupport& s,
                                                 const SurfaceRecord& rec) {
  if (rec.circuit.type != CircuitType::C)
    throw std::logic_error("locations_C: circuit is not of type C");
  const auto& cpts = rec.circuit.points;
  // plane normal and a transversal lattice direction
  LatticePoint n = primitive(cross(cpts[1] - cpts[0], cpts[2] - cpts[0]));
  LatticePoint t = bezout_vector(n);
  std::vector<ScaleValue> cvals;
  std::vector<LatticePoint> span(cpts.begin(), cpts.begin() + 3);
  for (int i = 0; i < 3; ++i) cvals.push_back(rec.nu.nu(rec.circuit.indices[i]));
  auto lam = detail::lambda_prime(span, cvals, {t});
  Int z0 = dot(n, cpts[0]);
  // 1D fibers
  std::map<Int, ScaleValue> fiber_min;
  for (int i = 0; i < s.size(); ++i) {
    Int m = dot(n, s.points[i]) - z0;
    ScaleValue v = rec.nu.nu(i) - lam.eval(s.points[i]);
    auto it = fiber_min.find(m);
    if (it == fiber_min.end() || v < it->second) fiber_min[m] = v;
  }
  std::vector<Pt<1>> pts;
  std::vector<ScaleValue> h;
  for (auto& [m, v] : fiber_min) {
    pts.push_back(Pt<1>{m});
    h.push_back(m == 0 ? ScaleValue::top() : v);
  }
  // z-range of the polytope
  Int zlo = 0, zhi = 0;
  for (const auto& vtx : s.polytope.vertices()) {
    Int m = dot(n, vtx) - z0;
    zlo = std::min(zlo, m);
    zhi = std::max(zhi, m);
  }
  auto cells = scale_lower_hull<1>(pts, h);
  auto hull_value = [&](const Int& m) {
    Pt<1> q{m};
    bool first = true;
    ScaleValue best;
    for (const auto& c : cells) {
      ScaleValue v = c.support.eval(q);
      if (first || v > best) {
        best = v;
        first = false;
      }
    }
    return best;
  };
  static const std::vector<std::pair<long, long>> admissible = {
      {-3, -1}, {-3, 1}, {-3, 3}, {-1, 1}, {-1, 3}, {1, 3}};
  std::vector<SingularLocation> out;
  for (const auto& c : cells) {
    if (c.members.size() != 2) continue;
    Int a = pts[c.members[0]][0], b = pts[c.members[1]][0];
    bool listed = false;
    for (auto [lo, hi] : admissible) listed |= (a == lo && b == hi);
    if (!listed) continue;
    // Lambda''(z) = slope * z, strictly below the hull at every lattice z
    const ScaleValue& slope = c.support.grad[0];
    if (slope.has_top()) continue;  // edges into the origin fiber never
                                    // qualify; the device must not leak
    bool ok = true;
    for (Int m = zlo; m <= zhi && ok; ++m) {
      ScaleValue diff = hull_value(m) - slope * m;
      ok = diff.sign() > 0;
    }
    if (!ok) continue;
    SingularLocation loc;
    loc.kind = SingularLocation::Kind::CSegment;
    loc.seg_lo = a;
    loc.seg_hi = b;
    loc.witness = {slope};
    loc.lifts = b - a;  // per enhancement
    out.push_back(std::move(loc));
  }
  return out;
}

// Type-E locations: project along the circuit direction to the fiber plane,
// build the 2D fiber-minimum hull, then collect qualifying triangle cells
// and edge pairs.
inline std::vector<SingularLocation> locations_E(const OrderedSupport& s,
                                                 const SurfaceRecord& rec) {
  if (rec.circuit.type != CircuitType::E)
    throw std::logic_error("locations_E: circuit is not of type E");
  const auto& cpts = rec.circuit.points;
  LatticePoint u = cpts[1] - cpts[0];  // primitive by classification
  // unimodular map sending u to e3: columns (k1, k2, u) inverted
  LatticePoint w = bezout_vector(u);
  auto ker = kernel_basis(w);
  Mat3 bmat;
  for (int i = 0; i < 3; ++i) bmat.rows[i] = {ker[0][i], ker[1][i], u[i]};
  Mat3 umap = unimodular_inverse(bmat);
  // Lambda' depends only on the fiber coordinate along u
  std::vector<LatticePoint> span(cpts.begin(), cpts.begin() + 2);
  std::vector<ScaleValue> cvals = {rec.nu.nu(rec.circuit.indices[0]),
                                   rec.nu.nu(rec.circuit.indices[1])};
  auto lam = detail::lambda_prime(span, cvals, {ker[0], ker[1]});
  // fibers in the (x, y) plane of the normalized coordinates
  std::map<std::pair<Int, Int>, ScaleValue> fiber_min;
  for (int i = 0; i < s.size(); ++i) {
    LatticePoint y = umap.apply(s.points[i] - cpts[0]);
    std::pair<Int, Int> m{y[0], y[1]};
    ScaleValue v = rec.nu.nu(i) - lam.eval(s.points[i]);
    auto it = fiber_min.find(m);
    if (it == fiber_min.end() || v < it->second) fiber_min[m] = v;
  }
  std::vector<Pt2> pts;
  std::vector<ScaleValue> h;
  for (auto& [m, v] : fiber_min) {
    pts.push_back(Pt2{m.first, m.second});
    bool origin = (m.first == 0 && m.second == 0);
    h.push_back(origin ? ScaleValue::top() : v);
  }
  // lattice points of the projected polytope
  std::vector<Pt2> proj_verts;
  for (const auto& vtx : s.polytope.vertices()) {
    LatticePoint y = umap.apply(vtx - cpts[0]);
    proj_verts.push_back(Pt2{y[0], y[1]});
  }
  auto polygon = polygon_lattice_points(proj_verts);
  auto cells = scale_lower_hull<2>(pts, h);
  auto hull_value = [&](const Pt2& q) {
    bool first = true;
    ScaleValue best;
    for (const auto& c : cells) {
      ScaleValue v = c.support.eval(q);
      if (first || v > best) {
        best = v;
        first = false;
      }
    }
    return best;
  };
  // genericity assertion: no cell may have three collinear members
  for (const auto& c : cells)
    for (size_t x = 0; x < c.members.size(); ++x)
      for (size_t y = x + 1; y < c.members.size(); ++y)
        for (size_t z = y + 1; z < c.members.size(); ++z) {
          Pt2 d1 = pts[c.members[y]] - pts[c.members[x]];
          Pt2 d2 = pts[c.members[z]] - pts[c.members[x]];
          if (det2(d1[0], d1[1], d2[0], d2[1]) == 0)
            throw std::logic_error(
                "locations_E: fiber heights linear along a lattice segment");
        }
  std::vector<SingularLocation> out;
  auto witness_seen = [&](const std::vector<ScaleValue>& wtn) {
    for (const auto& loc : out)
      if (loc.witness == wtn) return true;
    return false;
  };
  // (i) triangular cells matching one of the six families, with the cell
  // plane strictly positive at the origin
  for (const auto& c : cells) {
    if (c.members.size() != 3) continue;
    std::array<Pt2, 3> tri{pts[c.members[0]], pts[c.members[1]],
                           pts[c.members[2]]};
    if (!detail::matches_e_triangle_family(tri)) continue;
    if (!(c.support.offset.sign() > 0)) continue;  // value at the origin
    if (c.support.grad[0].has_top() || c.support.grad[1].has_top())
      throw std::logic_error("locations_E: TOP leaked into a witness");
    std::vector<ScaleValue> wtn = {c.support.grad[0], c.support.grad[1]};
    if (witness_seen(wtn)) continue;
    SingularLocation loc;
    loc.kind = SingularLocation::Kind::ETriangle;
    loc.triangle = tri;
    loc.volume = triangle_area2(tri);
    loc.witness = std::move(wtn);
    loc.lifts = 2 * loc.volume;
    out.push_back(std::move(loc));
  }
  // (ii) an edge with midpoint at the origin paired with a chord whose ends
  // lie at lattice distance +-1 from the edge's line
  // hull vertex set: corners of the cell polygons
  std::set<int> vertex_set;
  std::set<std::pair<int, int>> hull_edges;
  for (const auto& c : cells) {
    std::vector<Pt2> mem;
    for (int i : c.members) mem.push_back(pts[i]);
    auto corners = convex_hull_2d(mem);
    auto find_idx = [&](const Pt2& q) {
      for (size_t i = 0; i < mem.size(); ++i)
        if (mem[i] == q) return c.members[i];
      throw std::logic_error("locations_E: corner lookup failed");
    };
    std::vector<int> cyc;
    for (const auto& q : corners) cyc.push_back(find_idx(q));
    for (size_t i = 0; i < cyc.size(); ++i) {
      vertex_set.insert(cyc[i]);
      int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (cyc.size() == 2 && i == 1) break;
      hull_edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  for (const auto& [ea, eb] : hull_edges) {
    Pt2 a = pts[ea], b = pts[eb];
    if (!(a + b == Pt2{Int(0), Int(0)})) continue;  // midpoint at origin
    if (!(primitive2(a) == a)) continue;            // lattice length two
    Pt2 nrm{-a[1], a[0]};
    for (int pv : vertex_set) {
      for (int qv : vertex_set) {
        if (pv == qv) continue;
        Int dp = dot(nrm, pts[pv]), dq = dot(nrm, pts[qv]);
        if (!(dp == 1 && dq == -1)) continue;
        // Lambda'' parallel to the edge and to the chord
        Pt2 pq = pts[pv] - pts[qv];
        Int ax2 = 2 * a[0], ay2 = 2 * a[1];
        Int det = det2(ax2, ay2, pq[0], pq[1]);
        if (det == 0) continue;
        ScaleValue r1 = h[ea] - h[eb];
        ScaleValue r2 = h[pv] - h[qv];
        std::vector<ScaleValue> g(2);
        g[0] = (r1 * pq[1] - r2 * ay2) / det;
        g[1] = (r2 * ax2 - r1 * pq[0]) / det;
        auto lam2 = [&](const Pt2& m) { return g[0] * m[0] + g[1] * m[1]; };
        ScaleValue v1 = h[ea] - lam2(a);
        if (!(v1.sign() > 0)) continue;
        ScaleValue v2 = h[pv] - lam2(pts[pv]);
        bool ok = true;
        for (const auto& m : polygon) {
          bool on_line = (dot(nrm, m) == 0);
          bool on_e1 = on_line && (dot(m - a, m + a) <= 0);
          if (!on_e1) {
            ScaleValue diff = hull_value(m) - lam2(m) - v1;
            if (!(diff.sign() > 0)) {
              ok = false;
              break;
            }
          }
          if (!on_line && !(m == pts[pv]) && !(m == pts[qv])) {
            ScaleValue diff = hull_value(m) - lam2(m) - v2;
            if (!(diff.sign() > 0)) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) continue;
        if (g[0].has_top() || g[1].has_top())
          throw std::logic_error("locations_E: TOP leaked into a witness");
        if (witness_seen(g)) continue;
        SingularLocation loc;
        loc.kind = SingularLocation::Kind::EEdgePair;
        loc.witness = g;
        loc.lifts = 8;
        out.push_back(std::move(loc));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enhancements.

inline Int enhancement_count(const OrderedSupport& s,
                             const SurfaceRecord& rec) {
  const Circuit& c = rec.circuit;
  switch (c.type) {
    case CircuitType::A: {
      auto form = pentatope_form(c);
      auto dex = [&](int support_index) {
        for (size_t i = 0; i < c.indices.size(); ++i)
          if (c.indices[i] == support_index)
            return form.d_exponent.at(static_cast<int>(i));
        throw std::logic_error("enhancement_count: index not in circuit");
      };
      if (rec.path.kind == MarkedPath::Kind::GammaK)
        return abs_int(dex(rec.path.k));
      int nmax = c.indices.back();
      if (nmax == rec.path.k + 1) return abs_int(dex(rec.path.k + 1));
      return abs_int(dex(rec.path.k + 2) + dex(rec.path.k + 1));
    }
    case CircuitType::B: {
      std::vector<LatticePoint> hullpts;
      for (size_t i = 0; i < c.points.size(); ++i)
        if (c.relation.coeffs[i] > 0) hullpts.push_back(c.points[i]);
      Int vol = normalized_volume(hullpts, 3);
      static const std::vector<LatticePoint> special = {
          {Int(0), Int(0), Int(0)},
          {Int(1), Int(0), Int(0)},
          {Int(0), Int(1), Int(0)},
          {Int(3), Int(7), Int(20)}};
      if (unimodular_match_affine(hullpts, special)) return vol / 5;
      return vol;
    }
    case CircuitType::C:
      return 3;
    case CircuitType::D:
      return 1;
    case CircuitType::E: {
      // 1 when conv(C) is an edge of the lattice path, else 2
      int a = c.indices.front(), b = c.indices.back();
      for (const auto& e : rec.path.edges)
        if (e.first == a && e.second == b) return 1;
      return 2;
    }
  }
  throw std::logic_error("enhancement_count: unknown type");
}

// ---------------------------------------------------------------------------
// Lift counts and mt.

inline Int lift_count(const SurfaceRecord& rec,
                      const SingularLocation* loc = nullptr) {
  switch (rec.circuit.type) {
    case CircuitType::A:
      if (loc) throw std::logic_error("lift_count: type A has no locations");
      return 1;
    case CircuitType::B: {
      if (loc) throw std::logic_error("lift_count: type B has no locations");
      std::vector<LatticePoint> hullpts;
      for (size_t i = 0; i < rec.circuit.points.size(); ++i)
        if (rec.circuit.relation.coeffs[i] > 0)
          hullpts.push_back(rec.circuit.points[i]);
      static const std::vector<LatticePoint> special = {
          {Int(0), Int(0), Int(0)},
          {Int(1), Int(0), Int(0)},
          {Int(0), Int(1), Int(0)},
          {Int(3), Int(7), Int(20)}};
      return unimodular_match_affine(hullpts, special) ? Int(5) : Int(1);
    }
    case CircuitType::C:
      if (!loc || loc->kind != SingularLocation::Kind::CSegment)
        throw std::logic_error("lift_count: type C needs a segment location");
      return loc->seg_hi - loc->seg_lo;
    case CircuitType::D:
      if (loc) throw std::logic_error("lift_count: type D has no locations");
      return 2;
    case CircuitType::E:
      if (!loc || loc->kind == SingularLocation::Kind::CSegment)
        throw std::logic_error("lift_count: type E needs an E location");
      return loc->kind == SingularLocation::Kind::ETriangle ? 2 * loc->volume
                                                            : Int(8);
  }
  throw std::logic_error("lift_count: unknown type");
}

struct MultiplicityReport {
  Int enhancements = 0;
  std::vector<SingularLocation> locations;
  Int mt = 0;
  std::string rejection;  // empty when mt > 0
};

inline MultiplicityReport mt(const OrderedSupport& s,
                             const SurfaceRecord& rec) {
  MultiplicityReport rep;
  rep.enhancements = enhancement_count(s, rec);
  switch (rec.circuit.type) {
    case CircuitType::A:
      rep.mt = rep.enhancements * lift_count(rec);
      if (rep.mt == 0) rep.rejection = "no-enhancements";
      break;
    case CircuitType::B:
      rep.mt = rep.enhancements * lift_count(rec);  // = Vol(conv C)
      break;
    case CircuitType::C: {
      rep.locations = locations_C(s, rec);
      Int acc = 0;
      for (const auto& loc : rep.locations) acc += lift_count(rec, &loc);
      rep.mt = rep.enhancements * acc;
      if (rep.mt == 0) rep.rejection = "no-locations";
      break;
    }
    case CircuitType::D:
      rep.mt = lift_count(rec);  // 2
      break;
    case CircuitType::E: {
      // the E lift counts are already enhancement-inclusive
      rep.locations = locations_E(s, rec);
      for (const auto& loc : rep.locations) rep.mt += lift_count(rec, &loc);
      if (rep.mt == 0) rep.rejection = "no-locations";
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The degree of the discriminant.

struct DegreeReport {
  Int total = 0;
  std::map<CircuitType, Int> by_type;
  std::vector<std::pair<SurfaceRecord, MultiplicityReport>> surfaces;
};

inline DegreeReport degree(const Polytope& poly, int jobs = 1,
                           bool regularity_check = false) {
  DegreeReport rep;
  OrderedSupport s = order_support(poly);
  auto records = enumerate_surfaces(poly, jobs, regularity_check);
  rep.surfaces.resize(records.size());
  auto run = [&](size_t i) {
    MultiplicityReport m = mt(s, records[i]);
    rep.surfaces[i] = {std::move(records[i]), std::move(m)};
  };
  if (jobs <= 1 || records.size() < 2) {
    for (size_t i = 0; i < records.size(); ++i) run(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    int nthreads = std::min<int>(jobs, static_cast<int>(records.size()));
    std::vector<std::exception_ptr> errors(nthreads);
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (size_t i = next.fetch_add(1); i < records.size();
               i = next.fetch_add(1))
            run(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (const auto& [r, m] : rep.surfaces) {
    rep.total += m.mt;
    rep.by_type[r.circuit.type] += m.mt;
  }
  return rep;
}

}  // namespace tropdisc
