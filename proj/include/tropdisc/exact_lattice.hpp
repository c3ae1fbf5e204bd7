#pragma once

// Exact integer/rational lattice geometry: points, polytopes, normalized
// volumes, affine relations, unimodular matching, lower hulls.
// All predicates are sign decisions on exact data; no floating point.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tropdisc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct degeneracy_error : std::runtime_error {
  explicit degeneracy_error(const std::string& m) : std::runtime_error(m) {}
};
struct not_minimal_error : std::runtime_error {
  explicit not_minimal_error(const std::string& m) : std::runtime_error(m) {}
};

template <int N>
struct Pt {
  std::array<Int, N> c{};
  Int& operator[](int i) { return c[i]; }
  const Int& operator[](int i) const { return c[i]; }
  bool operator==(const Pt&) const = default;
};

using LatticePoint = Pt<3>;
using Pt2 = Pt<2>;
using Pt1 = Pt<1>;

template <int N>
Pt<N> operator+(const Pt<N>& a, const Pt<N>& b) {
  Pt<N> r;
  for (int i = 0; i < N; ++i) r[i] = a[i] + b[i];
  return r;
}
template <int N>
Pt<N> operator-(const Pt<N>& a, const Pt<N>& b) {
  Pt<N> r;
  for (int i = 0; i < N; ++i) r[i] = a[i] - b[i];
  return r;
}
template <int N>
Pt<N> operator*(const Int& s, const Pt<N>& a) {
  Pt<N> r;
  for (int i = 0; i < N; ++i) r[i] = s * a[i];
  return r;
}
template <int N>
Int dot(const Pt<N>& a, const Pt<N>& b) {
  Int r = 0;
  for (int i = 0; i < N; ++i) r += a[i] * b[i];
  return r;
}
inline LatticePoint cross(const LatticePoint& a, const LatticePoint& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
template <int N>
bool is_zero(const Pt<N>& a) {
  for (int i = 0; i < N; ++i)
    if (a[i] != 0) return false;
  return true;
}

// Lexicographic order on (x, y, z); this is exactly the point order induced
// by the direction vector (1, eps, eps^2), see scale_field.hpp.
template <int N>
bool lex_less(const Pt<N>& a, const Pt<N>& b) {
  for (int i = 0; i < N; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

template <int N>
std::string to_string(const Pt<N>& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < N; ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

inline Int det2(const Int& a, const Int& b, const Int& c, const Int& d) {
  return a * d - b * c;
}
inline Int det3(const LatticePoint& a, const LatticePoint& b,
                const LatticePoint& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) -
         a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline Int abs_int(Int v) { return v < 0 ? Int(-v) : v; }

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// g = gcd(a, b) together with x a + y b = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    x = a < 0 ? -1 : 1;
    y = 0;
    return abs_int(a);
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// ---------------------------------------------------------------------------
// Integer linear algebra helpers (HNF-style reductions).

// Column-style Hermite reduction of a 3 x m matrix given as column vectors.
// Returns an upper triangular basis of the column lattice (up to 3 columns).
inline std::vector<LatticePoint> column_lattice_basis(
    std::vector<LatticePoint> cols) {
  std::vector<LatticePoint> basis;
  for (int row = 0; row < 3; ++row) {
    // gcd-combine all columns with nonzero entry in `row` into one.
    int pivot = -1;
    for (size_t j = 0; j < cols.size(); ++j) {
      if (cols[j][row] == 0) continue;
      if (pivot < 0) {
        pivot = static_cast<int>(j);
        continue;
      }
      // Reduce cols[j] against cols[pivot] by the Euclidean algorithm.
      while (cols[j][row] != 0) {
        Int q = cols[pivot][row] / cols[j][row];
        for (int r = 0; r < 3; ++r) cols[pivot][r] -= q * cols[j][r];
        std::swap(cols[pivot], cols[j]);
      }
    }
    if (pivot >= 0) {
      basis.push_back(cols[pivot]);
      cols.erase(cols.begin() + pivot);
    }
  }
  return basis;
}

// True iff the given integer vectors generate the full lattice Z^3.
inline bool generates_z3(const std::vector<LatticePoint>& vecs) {
  auto basis = column_lattice_basis(vecs);
  if (basis.size() != 3) return false;
  Int d = det3(basis[0], basis[1], basis[2]);
  return d == 1 || d == -1;
}

// Basis of the lattice { x in Z^3 : <n, x> = 0 } for primitive n != 0.
inline std::array<LatticePoint, 2> kernel_basis(const LatticePoint& n) {
  std::vector<LatticePoint> gens = {
      {-n[1], n[0], Int(0)}, {-n[2], Int(0), n[0]}, {Int(0), -n[2], n[1]}};
  auto basis = column_lattice_basis(gens);
  if (basis.size() != 2) throw degeneracy_error("kernel_basis: n == 0");
  return {basis[0], basis[1]};
}

// Some w with <n, w> = 1 for primitive n.
inline LatticePoint bezout_vector(const LatticePoint& n) {
  Int x, y, z, g1x, g1y;
  Int g1 = ext_gcd(n[0], n[1], g1x, g1y);
  Int g = ext_gcd(g1, n[2], x, z);
  if (g != 1) throw degeneracy_error("bezout_vector: n not primitive");
  return {g1x * x, g1y * x, z};
}

struct Mat3 {
  std::array<LatticePoint, 3> rows;
  LatticePoint apply(const LatticePoint& p) const {
    return {dot(rows[0], p), dot(rows[1], p), dot(rows[2], p)};
  }
  Int det() const { return det3(rows[0], rows[1], rows[2]); }
};
struct Mat2 {
  std::array<Pt2, 2> rows;
  Pt2 apply(const Pt2& p) const { return {dot(rows[0], p), dot(rows[1], p)}; }
  Int det() const { return det2(rows[0][0], rows[0][1], rows[1][0], rows[1][1]); }
};

// Inverse of a matrix with det +-1.
inline Mat3 unimodular_inverse(const Mat3& m) {
  Int d = m.det();
  if (d != 1 && d != -1)
    throw degeneracy_error("unimodular_inverse: det not +-1");
  const auto& r = m.rows;
  // adjugate transposed appropriately: inv[i][j] = cofactor(j,i)/det
  Mat3 inv;
  auto cof = [&](int i, int j) {
    int i0 = (i + 1) % 3, i1 = (i + 2) % 3;
    int j0 = (j + 1) % 3, j1 = (j + 2) % 3;
    return r[i0][j0] * r[i1][j1] - r[i0][j1] * r[i1][j0];
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) inv.rows[i][j] = cof(j, i) * d;
  return inv;
}

// Unimodular U whose third output coordinate is <n, x> (n primitive):
// U maps the plane <n,x> = c onto z = c.
inline Mat3 plane_to_z(const LatticePoint& n) {
  auto ker = kernel_basis(n);
  LatticePoint w = bezout_vector(n);
  Mat3 b;  // columns ker[0], ker[1], w
  for (int i = 0; i < 3; ++i) b.rows[i] = {ker[0][i], ker[1][i], w[i]};
  return unimodular_inverse(b);
}

inline LatticePoint primitive(LatticePoint v) {
  Int g = gcd_int(gcd_int(v[0], v[1]), v[2]);
  if (g > 1)
    for (auto& x : v.c) x /= g;
  return v;
}
inline Pt2 primitive2(Pt2 v) {
  Int g = gcd_int(v[0], v[1]);
  if (g > 1)
    for (auto& x : v.c) x /= g;
  return v;
}

// ---------------------------------------------------------------------------
// 2D convex hull (monotone chain), counterclockwise vertex order.
inline std::vector<Pt2> convex_hull_2d(std::vector<Pt2> pts) {
  std::sort(pts.begin(), pts.end(), lex_less<2>);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t n = pts.size();
  if (n <= 2) return pts;
  auto cross2 = [](const Pt2& o, const Pt2& a, const Pt2& b) {
    return det2(a[0] - o[0], a[1] - o[1], b[0] - o[0], b[1] - o[1]);
  };
  std::vector<Pt2> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Lattice points of a convex polygon given by its vertices.
inline std::vector<Pt2> polygon_lattice_points(const std::vector<Pt2>& verts) {
  if (verts.empty()) return {};
  auto hull = convex_hull_2d(verts);
  Int xmin = hull[0][0], xmax = hull[0][0], ymin = hull[0][1], ymax = hull[0][1];
  for (const auto& p : hull) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  // Halfplane tests against hull edges (CCW: inside is left of each edge).
  auto inside = [&](const Pt2& q) {
    size_t m = hull.size();
    if (m == 1) return q == hull[0];
    for (size_t i = 0; i < m; ++i) {
      const Pt2& a = hull[i];
      const Pt2& b = hull[(i + 1) % m];
      if (m == 2 && i == 1) break;
      Int s = det2(b[0] - a[0], b[1] - a[1], q[0] - a[0], q[1] - a[1]);
      if (m == 2) {
        if (s != 0) return false;
        // on segment
        if (dot(q - a, b - a) < 0 || dot(q - b, a - b) < 0) return false;
      } else if (s < 0) {
        return false;
      }
    }
    return true;
  };
  std::vector<Pt2> out;
  for (Int x = xmin; x <= xmax; ++x)
    for (Int y = ymin; y <= ymax; ++y) {
      Pt2 q{x, y};
      if (inside(q)) out.push_back(q);
    }
  std::sort(out.begin(), out.end(), lex_less<2>);
  return out;
}

// ---------------------------------------------------------------------------
// AffineRelation: the unique (up to sign) primitive integer relation
// sum l_s w_s = 0 with sum l_s = 0, first nonzero entry positive.
struct AffineRelation {
  std::vector<Int> coeffs;

  void normalize() {
    Int g = 0;
    for (const auto& c : coeffs) g = gcd_int(g, c);
    if (g > 1)
      for (auto& c : coeffs) c /= g;
    for (const auto& c : coeffs) {
      if (c == 0) continue;
      if (c < 0)
        for (auto& x : coeffs) x = -x;
      break;
    }
  }
  bool operator==(const AffineRelation& o) const { return coeffs == o.coeffs; }
};

namespace detail {

// Exact rational nullspace of the (N+1) x n matrix with columns (p_i, 1).
// Returns all nullspace basis vectors.
template <int N>
std::vector<std::vector<Rat>> affine_nullspace(const std::vector<Pt<N>>& pts) {
  size_t n = pts.size();
  size_t rows = N + 1;
  std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(n));
  for (size_t j = 0; j < n; ++j) {
    for (int i = 0; i < N; ++i) a[i][j] = Rat(pts[j][i]);
    a[N][j] = 1;
  }
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < n && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    Rat inv = a[r][c];
    for (size_t j = c; j < n; ++j) a[r][j] /= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (size_t free_c = 0; free_c < n; ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<Rat> v(n, Rat(0));
    v[free_c] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = -a[i][free_c];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline AffineRelation to_primitive(const std::vector<Rat>& v) {
  Int lcm = 1;
  for (const auto& q : v) {
    Int den = boost::multiprecision::denominator(q);
    lcm = lcm / gcd_int(lcm, den) * den;
  }
  AffineRelation rel;
  rel.coeffs.reserve(v.size());
  for (const auto& q : v)
    rel.coeffs.push_back(Int(boost::multiprecision::numerator(q) *
                             (lcm / boost::multiprecision::denominator(q))));
  rel.normalize();
  return rel;
}

}  // namespace detail

// Unique primitive affine relation among 3..5 points, or nullopt when the
// points are affinely independent. Throws not_minimal_error when the
// dependence space has dimension >= 2 (not a circuit candidate).
template <int N>
std::optional<AffineRelation> affine_relation(const std::vector<Pt<N>>& pts) {
  if (pts.size() < 3 || pts.size() > 5)
    throw std::invalid_argument("affine_relation: need 3..5 points");
  auto basis = detail::affine_nullspace<N>(pts);
  if (basis.empty()) return std::nullopt;
  if (basis.size() > 1)
    throw not_minimal_error("affine_relation: dependence space dim >= 2");
  return detail::to_primitive(basis[0]);
}

// Fast integer path for the 3D case: the relation coefficients are signed
// minors of the coordinate matrix. Falls back to the generic eliminator for
// rank-deficient inputs.
template <>
inline std::optional<AffineRelation> affine_relation<3>(
    const std::vector<Pt<3>>& pts) {
  size_t n = pts.size();
  if (n < 3 || n > 5)
    throw std::invalid_argument("affine_relation: need 3..5 points");
  auto generic = [&]() -> std::optional<AffineRelation> {
    auto basis = detail::affine_nullspace<3>(pts);
    if (basis.empty()) return std::nullopt;
    if (basis.size() > 1)
      throw not_minimal_error("affine_relation: dependence space dim >= 2");
    return detail::to_primitive(basis[0]);
  };
  if (n == 3) {
    LatticePoint d1 = pts[1] - pts[0], d2 = pts[2] - pts[0];
    if (!is_zero(cross(d1, d2))) return std::nullopt;
    if (is_zero(d1) || is_zero(d2)) return generic();
    LatticePoint u = primitive(d1);
    int ax = 0;
    while (u[ax] == 0) ++ax;
    Int t0 = 0, t1 = d1[ax] / u[ax], t2 = d2[ax] / u[ax];
    AffineRelation r{{t1 - t2, t2 - t0, t0 - t1}};
    r.normalize();
    return r;
  }
  if (n == 4) {
    LatticePoint nrm{};
    for (int a = 1; a < 4 && is_zero(nrm); ++a)
      for (int b = a + 1; b < 4 && is_zero(nrm); ++b)
        nrm = cross(pts[a] - pts[0], pts[b] - pts[0]);
    if (is_zero(nrm)) return generic();  // collinear: dependence dim >= 2
    for (int t = 1; t < 4; ++t)
      if (dot(nrm, pts[t] - pts[0]) != 0) return std::nullopt;  // independent
    int ax = 0;
    for (int t = 1; t < 3; ++t)
      if (abs_int(nrm[t]) > abs_int(nrm[ax])) ax = t;
    int u = (ax + 1) % 3, v = (ax + 2) % 3;
    AffineRelation r;
    r.coeffs.resize(4);
    for (int i = 0; i < 4; ++i) {
      std::array<Pt2, 3> q{};
      int t = 0;
      for (int j = 0; j < 4; ++j)
        if (j != i) q[t++] = Pt2{pts[j][u], pts[j][v]};
      Int m = det2(q[1][0] - q[0][0], q[1][1] - q[0][1], q[2][0] - q[0][0],
                   q[2][1] - q[0][1]);
      r.coeffs[i] = (i % 2 == 0) ? m : Int(-m);
    }
    bool all_zero = true;
    for (const auto& c : r.coeffs) all_zero &= (c == 0);
    if (all_zero) return generic();
    r.normalize();
    return r;
  }
  // n == 5
  AffineRelation r;
  r.coeffs.resize(5);
  bool all_zero = true;
  for (int i = 0; i < 5; ++i) {
    std::array<LatticePoint, 4> q{};
    int t = 0;
    for (int j = 0; j < 5; ++j)
      if (j != i) q[t++] = pts[j];
    Int m = det3(q[1] - q[0], q[2] - q[0], q[3] - q[0]);
    r.coeffs[i] = (i % 2 == 0) ? m : Int(-m);
    all_zero &= (m == 0);
  }
  if (all_zero) return generic();  // rank-deficient: classify via eliminator
  r.normalize();
  return r;
}

// True iff the 4 points span a lattice simplex of normalized volume 1.
inline bool is_unimodular_simplex(const std::array<LatticePoint, 4>& p) {
  Int d = det3(p[1] - p[0], p[2] - p[0], p[3] - p[0]);
  if (d == 0) throw degeneracy_error("is_unimodular_simplex: degenerate");
  return d == 1 || d == -1;
}

// ---------------------------------------------------------------------------
// unimodular_match: integer-linear (origin-fixing) matching of marked point
// sets. Tries all vertex correspondences; M is solved from independent
// vectors and verified on the rest. Returns none when no map exists.

inline std::optional<Mat2> unimodular_match(const std::vector<Pt2>& src,
                                            const std::vector<Pt2>& dst) {
  if (src.size() != dst.size() || src.empty() || src.size() > 4)
    return std::nullopt;
  size_t n = src.size();
  // two linearly independent source vectors
  int i0 = -1, i1 = -1;
  for (size_t i = 0; i < n && i0 < 0; ++i)
    if (!is_zero(src[i])) i0 = static_cast<int>(i);
  if (i0 < 0) return std::nullopt;
  for (size_t i = 0; i < n && i1 < 0; ++i)
    if (det2(src[i0][0], src[i0][1], src[i][0], src[i][1]) != 0)
      i1 = static_cast<int>(i);
  if (i1 < 0) return std::nullopt;
  Int ds = det2(src[i0][0], src[i0][1], src[i1][0], src[i1][1]);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const Pt2& a = dst[perm[i0]];
    const Pt2& b = dst[perm[i1]];
    // M * src[i0] = a, M * src[i1] = b  =>  M = [a b] * [s0 s1]^-1
    // [s0 s1]^-1 = adj/ds
    Int m00 = a[0] * src[i1][1] - b[0] * src[i0][1];
    Int m01 = -a[0] * src[i1][0] + b[0] * src[i0][0];
    Int m10 = a[1] * src[i1][1] - b[1] * src[i0][1];
    Int m11 = -a[1] * src[i1][0] + b[1] * src[i0][0];
    if (m00 % ds != 0 || m01 % ds != 0 || m10 % ds != 0 || m11 % ds != 0)
      continue;
    Mat2 m{{Pt2{m00 / ds, m01 / ds}, Pt2{m10 / ds, m11 / ds}}};
    Int d = m.det();
    if (d != 1 && d != -1) continue;
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) ok = (m.apply(src[i]) == dst[perm[i]]);
    if (ok) return m;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

inline std::optional<Mat3> unimodular_match(const std::vector<LatticePoint>& src,
                                            const std::vector<LatticePoint>& dst) {
  if (src.size() != dst.size() || src.empty() || src.size() > 4)
    return std::nullopt;
  size_t n = src.size();
  int i0 = -1, i1 = -1, i2 = -1;
  for (size_t i = 0; i < n && i0 < 0; ++i)
    if (!is_zero(src[i])) i0 = static_cast<int>(i);
  if (i0 < 0) return std::nullopt;
  for (size_t i = 0; i < n && i1 < 0; ++i)
    if (!is_zero(cross(src[i0], src[i]))) i1 = static_cast<int>(i);
  if (i1 < 0) return std::nullopt;
  for (size_t i = 0; i < n && i2 < 0; ++i)
    if (det3(src[i0], src[i1], src[i]) != 0) i2 = static_cast<int>(i);
  if (i2 < 0) return std::nullopt;
  Int ds = det3(src[i0], src[i1], src[i2]);
  Mat3 s;  // columns src[i0..i2]
  for (int r = 0; r < 3; ++r) s.rows[r] = {src[i0][r], src[i1][r], src[i2][r]};
  // adj(s)
  Mat3 adj;
  auto cof = [&](int i, int j) {
    int a0 = (i + 1) % 3, a1 = (i + 2) % 3;
    int b0 = (j + 1) % 3, b1 = (j + 2) % 3;
    return s.rows[a0][b0] * s.rows[a1][b1] - s.rows[a0][b1] * s.rows[a1][b0];
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) adj.rows[i][j] = cof(j, i);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Mat3 dmat;  // columns dst[perm[i0..i2]]
    for (int r = 0; r < 3; ++r)
      dmat.rows[r] = {dst[perm[i0]][r], dst[perm[i1]][r], dst[perm[i2]][r]};
    // M = dmat * adj / ds
    Mat3 m;
    bool integral = true;
    for (int i = 0; i < 3 && integral; ++i)
      for (int j = 0; j < 3 && integral; ++j) {
        Int v = 0;
        for (int t = 0; t < 3; ++t) v += dmat.rows[i][t] * adj.rows[t][j];
        if (v % ds != 0) {
          integral = false;
          break;
        }
        m.rows[i][j] = v / ds;
      }
    if (!integral) continue;
    Int d = m.det();
    if (d != 1 && d != -1) continue;
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) ok = (m.apply(src[i]) == dst[perm[i]]);
    if (ok) return m;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// Affine unimodular matching of point sets (translations allowed): fixes a
// base point on each side and reduces to the linear case.
inline bool unimodular_match_affine(const std::vector<LatticePoint>& src,
                                    const std::vector<LatticePoint>& dst) {
  if (src.size() != dst.size() || src.empty()) return false;
  std::vector<LatticePoint> s0;
  for (const auto& p : src) s0.push_back(p - src[0]);
  for (size_t j = 0; j < dst.size(); ++j) {
    std::vector<LatticePoint> d0;
    for (const auto& p : dst) d0.push_back(p - dst[j]);
    // src[0] must map to dst[j]; drop the common zero vector and match rest
    if (unimodular_match(s0, d0)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Polytope: 3-dimensional lattice polytope with cached facet description and
// lattice points. The difference set of its lattice points must generate Z^3.

struct Facet {
  LatticePoint normal;  // outward, primitive
  Int offset;           // <normal, x> <= offset on the polytope
};

class Polytope {
 public:
  static Polytope from_vertices(std::vector<LatticePoint> pts,
                                bool require_generates = true) {
    Polytope p;
    if (pts.empty()) throw degeneracy_error("polytope: no vertices");
    std::sort(pts.begin(), pts.end(), lex_less<3>);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    p.facets_ = hull_facets(pts);
    if (p.facets_.empty())
      throw degeneracy_error("polytope: not 3-dimensional");
    // extreme points: those not strictly inside w.r.t. every facet they
    // fail to saturate at least dim-many independent facets; simplest exact
    // test is membership in the hull of the remaining points.
    for (const auto& q : pts) {
      std::vector<LatticePoint> rest;
      for (const auto& r : pts)
        if (!(r == q)) rest.push_back(r);
      if (!in_hull(rest, q)) p.verts_.push_back(q);
    }
    p.lpts_ = enumerate_lattice_points(p.facets_, p.verts_);
    if (require_generates) {
      std::vector<LatticePoint> diffs;
      for (size_t i = 1; i < p.lpts_.size(); ++i)
        diffs.push_back(p.lpts_[i] - p.lpts_[0]);
      if (!generates_z3(diffs))
        throw degeneracy_error(
            "polytope: lattice point differences do not generate Z^3");
    }
    return p;
  }

  const std::vector<LatticePoint>& vertices() const { return verts_; }
  const std::vector<LatticePoint>& lattice_points() const { return lpts_; }
  const std::vector<Facet>& facets() const { return facets_; }

  bool contains(const LatticePoint& q) const {
    for (const auto& f : facets_)
      if (dot(f.normal, q) > f.offset) return false;
    return true;
  }
  bool is_vertex(const LatticePoint& q) const {
    return std::find(verts_.begin(), verts_.end(), q) != verts_.end();
  }
  // True iff all given points lie on one common facet of the polytope.
  bool on_common_facet(const std::vector<LatticePoint>& pts) const {
    for (const auto& f : facets_) {
      bool all = true;
      for (const auto& q : pts)
        if (dot(f.normal, q) != f.offset) {
          all = false;
          break;
        }
      if (all) return true;
    }
    return false;
  }
  bool on_boundary(const LatticePoint& q) const {
    for (const auto& f : facets_)
      if (dot(f.normal, q) == f.offset) return true;
    return false;
  }

  // Facets of the convex hull of a full-dimensional point set.
  static std::vector<Facet> hull_facets(const std::vector<LatticePoint>& pts) {
    std::vector<Facet> facets;
    size_t n = pts.size();
    std::set<std::pair<std::array<Int, 3>, Int>> seen;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k) {
          LatticePoint nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
          if (is_zero(nrm)) continue;
          nrm = primitive(nrm);
          Int off = dot(nrm, pts[i]);
          bool below = true, above = true;
          for (size_t t = 0; t < n; ++t) {
            Int v = dot(nrm, pts[t]);
            if (v > off) below = false;
            if (v < off) above = false;
            if (!below && !above) break;
          }
          if (below && above) continue;  // all points coplanar: no 3D facet
          if (!below && !above) continue;
          Facet f;
          if (below) {
            f.normal = nrm;
            f.offset = off;
          } else {
            f.normal = {-nrm[0], -nrm[1], -nrm[2]};
            f.offset = -off;
          }
          auto key = std::make_pair(
              std::array<Int, 3>{f.normal[0], f.normal[1], f.normal[2]},
              f.offset);
          if (seen.insert(key).second) facets.push_back(f);
        }
    return facets;
  }

  static bool in_hull(const std::vector<LatticePoint>& pts,
                      const LatticePoint& q) {
    // handles lower-dimensional hulls: q must satisfy every supporting
    // inequality; for dim < 3 the affine hull equations are included.
    auto facets = hull_facets(pts);
    if (!facets.empty()) {
      for (const auto& f : facets)
        if (dot(f.normal, q) > f.offset) return false;
      return true;
    }
    // lower-dimensional: check affine hull membership + inside via recursion
    // on supporting functionals in the hull.
    // dim <= 2: use exhaustive functional test: q in conv(pts) iff there is
    // no separating functional among those spanned by point differences.
    // For the sizes involved this rational LP is replaced by a direct check.
    return in_hull_lowdim(pts, q);
  }

 private:
  static bool in_hull_lowdim(const std::vector<LatticePoint>& pts,
                             const LatticePoint& q) {
    // membership via exact barycentric solve (rational), any dimension
    auto basis = detail::affine_nullspace<3>(pts);
    // brute force: try to write q as convex combination; small sizes only.
    // Solve sum a_i p_i = q, sum a_i = 1, a_i >= 0 by vertex enumeration on
    // affinely independent subsets.
    size_t n = pts.size();
    (void)basis;
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    // try all subsets of size up to 4 that are affinely independent
    std::vector<std::vector<int>> subs;
    for (size_t a = 0; a < n; ++a) {
      subs.push_back({(int)a});
      for (size_t b = a + 1; b < n; ++b) {
        subs.push_back({(int)a, (int)b});
        for (size_t c = b + 1; c < n; ++c) {
          subs.push_back({(int)a, (int)b, (int)c});
          for (size_t d = c + 1; d < n; ++d)
            subs.push_back({(int)a, (int)b, (int)c, (int)d});
        }
      }
    }
    for (const auto& s : subs) {
      std::vector<LatticePoint> sub;
      for (int i : s) sub.push_back(pts[i]);
      auto bc = barycentric(sub, q);
      if (!bc) continue;
      bool ok = true;
      for (const auto& c : *bc)
        if (c < 0) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  }

 public:
  // Barycentric coordinates of q w.r.t. affinely independent pts (size<=4),
  // or nullopt when q is outside their affine hull / pts are dependent.
  static std::optional<std::vector<Rat>> barycentric(
      const std::vector<LatticePoint>& pts, const LatticePoint& q) {
    std::vector<LatticePoint> all = pts;
    all.push_back(q);
    std::optional<AffineRelation> rel;
    try {
      auto basis = detail::affine_nullspace<3>(all);
      if (basis.size() != 1) return std::nullopt;
      rel = detail::to_primitive(basis[0]);
    } catch (...) {
      return std::nullopt;
    }
    Int qc = rel->coeffs.back();
    if (qc == 0) return std::nullopt;  // pts themselves dependent
    std::vector<Rat> out;
    for (size_t i = 0; i + 1 < rel->coeffs.size(); ++i)
      out.push_back(Rat(-rel->coeffs[i]) / Rat(qc));
    return out;
  }

 private:
  static std::vector<LatticePoint> enumerate_lattice_points(
      const std::vector<Facet>& facets, const std::vector<LatticePoint>& verts) {
    Int xmin = verts[0][0], xmax = verts[0][0];
    Int ymin = verts[0][1], ymax = verts[0][1];
    Int zmin = verts[0][2], zmax = verts[0][2];
    for (const auto& v : verts) {
      xmin = std::min(xmin, v[0]);
      xmax = std::max(xmax, v[0]);
      ymin = std::min(ymin, v[1]);
      ymax = std::max(ymax, v[1]);
      zmin = std::min(zmin, v[2]);
      zmax = std::max(zmax, v[2]);
    }
    std::vector<LatticePoint> out;
    for (Int x = xmin; x <= xmax; ++x)
      for (Int y = ymin; y <= ymax; ++y)
        for (Int z = zmin; z <= zmax; ++z) {
          LatticePoint q{x, y, z};
          bool in = true;
          for (const auto& f : facets)
            if (dot(f.normal, q) > f.offset) {
              in = false;
              break;
            }
          if (in) out.push_back(q);
        }
    std::sort(out.begin(), out.end(), lex_less<3>);
    return out;
  }

  std::vector<LatticePoint> verts_, lpts_;
  std::vector<Facet> facets_;
};

// Exact, lex-ordered lattice point enumeration.
inline std::vector<LatticePoint> lattice_points(const Polytope& p) {
  return p.lattice_points();
}

// The standard simplex conv{0, d e1, d e2, d e3}.
inline Polytope simplex_polytope(int d) {
  if (d < 1) throw std::invalid_argument("simplex: d >= 1 required");
  Int dd = d;
  return Polytope::from_vertices({{Int(0), Int(0), Int(0)},
                                  {dd, Int(0), Int(0)},
                                  {Int(0), dd, Int(0)},
                                  {Int(0), Int(0), dd}});
}

// ---------------------------------------------------------------------------
// Normalized volume: unimodular simplex of the given dimension has volume 1.

inline Int normalized_volume(const std::vector<LatticePoint>& pts, int dim);

namespace detail {

inline Int volume1d(const std::vector<LatticePoint>& pts) {
  LatticePoint dir{};
  const LatticePoint& p0 = pts[0];
  for (const auto& p : pts)
    if (!(p == p0)) {
      dir = primitive(p - p0);
      break;
    }
  if (is_zero(dir)) throw degeneracy_error("normalized_volume: dim < 1");
  Int tmin = 0, tmax = 0;
  int ax = 0;
  while (dir[ax] == 0) ++ax;
  for (const auto& p : pts) {
    LatticePoint d = p - p0;
    if (!is_zero(cross(d, dir)))
      throw degeneracy_error("normalized_volume: dim > 1");
    Int t = d[ax] / dir[ax];
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
  }
  return tmax - tmin;
}

inline Int volume2d_in_plane(const std::vector<Pt2>& pts2) {
  auto hull = convex_hull_2d(pts2);
  if (hull.size() < 3) throw degeneracy_error("normalized_volume: dim < 2");
  Int two_area = 0;
  for (size_t i = 1; i + 1 < hull.size(); ++i)
    two_area += det2(hull[i][0] - hull[0][0], hull[i][1] - hull[0][1],
                     hull[i + 1][0] - hull[0][0], hull[i + 1][1] - hull[0][1]);
  return abs_int(two_area);  // normalized area = 2 * euclidean area
}

inline Int volume3d(const std::vector<LatticePoint>& pts) {
  auto facets = Polytope::hull_facets(pts);
  if (facets.empty()) throw degeneracy_error("normalized_volume: dim < 3");
  const LatticePoint& apex =
      *std::min_element(pts.begin(), pts.end(), lex_less<3>);
  Int six_vol = 0;
  for (const auto& f : facets) {
    if (dot(f.normal, apex) == f.offset) continue;  // facet contains apex
    std::vector<LatticePoint> on;
    for (const auto& p : pts)
      if (dot(f.normal, p) == f.offset) on.push_back(p);
    // order the facet polygon: project to 2D along a nonzero normal axis
    int ax = 0;
    while (f.normal[ax] == 0) ++ax;
    int u = (ax + 1) % 3, v = (ax + 2) % 3;
    std::vector<Pt2> proj;
    for (const auto& p : on) proj.push_back({p[u], p[v]});
    auto hull2 = convex_hull_2d(proj);
    auto lift = [&](const Pt2& q) {
      for (const auto& p : on)
        if (p[u] == q[0] && p[v] == q[1]) return p;
      throw std::logic_error("volume3d: lift failed");
    };
    for (size_t i = 1; i + 1 < hull2.size(); ++i) {
      LatticePoint a = lift(hull2[0]), b = lift(hull2[i]), c = lift(hull2[i + 1]);
      six_vol += abs_int(det3(a - apex, b - apex, c - apex));
    }
  }
  return six_vol;
}

}  // namespace detail

inline Int normalized_volume(const std::vector<LatticePoint>& pts, int dim) {
  if (pts.size() < static_cast<size_t>(dim) + 1)
    throw degeneracy_error("normalized_volume: too few points");
  switch (dim) {
    case 1:
      return detail::volume1d(pts);
    case 2: {
      // map the plane of the points onto z = const, then measure in 2D
      LatticePoint d1{}, d2{};
      const LatticePoint& p0 = pts[0];
      for (const auto& p : pts) {
        LatticePoint d = p - p0;
        if (is_zero(d)) continue;
        if (is_zero(d1)) {
          d1 = d;
          continue;
        }
        if (!is_zero(cross(d1, d))) {
          d2 = d;
          break;
        }
      }
      if (is_zero(d2)) throw degeneracy_error("normalized_volume: dim < 2");
      LatticePoint n = primitive(cross(d1, d2));
      for (const auto& p : pts)
        if (dot(n, p - p0) != 0)
          throw degeneracy_error("normalized_volume: dim > 2");
      Mat3 u = plane_to_z(n);
      std::vector<Pt2> pts2;
      for (const auto& p : pts) {
        LatticePoint q = u.apply(p);
        pts2.push_back({q[0], q[1]});
      }
      return detail::volume2d_in_plane(pts2);
    }
    case 3:
      return detail::volume3d(pts);
    default:
      throw std::invalid_argument("normalized_volume: dim must be 1..3");
  }
}

// Normalized volume of a 2D lattice triangle given in plane coordinates.
inline Int triangle_area2(const std::array<Pt2, 3>& t) {
  return abs_int(det2(t[1][0] - t[0][0], t[1][1] - t[0][1], t[2][0] - t[0][0],
                      t[2][1] - t[0][1]));
}

// ---------------------------------------------------------------------------
// Lower hulls of lifted point sets, generic over the ordered height field H
// (ScaleValue or exact rationals). Cells carry their affine support function
// l(x) = <grad, x> + offset with l <= h everywhere and equality on the cell.

template <int N, class H>
struct AffineSupport {
  std::array<H, N> grad;
  H offset;
  H eval(const Pt<N>& p) const {
    H v = offset;
    for (int i = 0; i < N; ++i) v = v + grad[i] * p[i];
    return v;
  }
  bool operator==(const AffineSupport& o) const {
    return grad == o.grad && offset == o.offset;
  }
};

template <int N, class H>
struct HullCell {
  std::vector<int> members;  // indices of points with l == h, sorted
  AffineSupport<N, H> support;
};

namespace detail {

inline Int cofactor3(const std::array<LatticePoint, 3>& rows, int r, int c) {
  int r0 = (r + 1) % 3, r1 = (r + 2) % 3;
  int c0 = (c + 1) % 3, c1 = (c + 2) % 3;
  if (r0 > r1) std::swap(r0, r1);
  if (c0 > c1) std::swap(c0, c1);
  Int minor = rows[r0][c0] * rows[r1][c1] - rows[r0][c1] * rows[r1][c0];
  return ((r + c) % 2 == 0) ? minor : Int(-minor);
}

// Solve the support function through N+1 affinely independent lifted points.
// Heights enter linearly; division only by the integer base determinant.
template <int N, class H>
std::optional<AffineSupport<N, H>> solve_support(
    const std::vector<Pt<N>>& pts, const std::vector<H>& h,
    const std::array<int, N + 1>& idx) {
  // base matrix rows: (p_i - p_0); unknown grad from differences, then offset
  std::array<Pt<N>, N> rows;
  for (int i = 0; i < N; ++i) rows[i] = pts[idx[i + 1]] - pts[idx[0]];
  Int d;
  if constexpr (N == 1) {
    d = rows[0][0];
  } else if constexpr (N == 2) {
    d = det2(rows[0][0], rows[0][1], rows[1][0], rows[1][1]);
  } else {
    d = det3(rows[0], rows[1], rows[2]);
  }
  if (d == 0) return std::nullopt;
  std::array<H, N> rhs;
  for (int i = 0; i < N; ++i) rhs[i] = h[idx[i + 1]] - h[idx[0]];
  AffineSupport<N, H> s;
  if constexpr (N == 1) {
    s.grad[0] = rhs[0] / d;
  } else if constexpr (N == 2) {
    // Cramer on the 2x2 system rows * g = rhs
    s.grad[0] = (rhs[0] * rows[1][1] - rhs[1] * rows[0][1]) / d;
    s.grad[1] = (rows[0][0] * rhs[1] - rows[1][0] * rhs[0]) / d;
  } else {
    // Cramer on the 3x3 system
    auto col_det = [&](int c, const std::array<H, 3>& b) {
      // determinant with column c replaced by b, expanded along that column
      H acc = b[0] * cofactor3(rows, 0, c);
      acc = acc + b[1] * cofactor3(rows, 1, c);
      acc = acc + b[2] * cofactor3(rows, 2, c);
      return acc;
    };
    std::array<H, 3> b{rhs[0], rhs[1], rhs[2]};
    for (int c = 0; c < 3; ++c) s.grad[c] = col_det(c, b) / d;
  }
  H off = h[idx[0]];
  for (int i = 0; i < N; ++i) off = off - s.grad[i] * pts[idx[0]][i];
  s.offset = off;
  return s;
}

}  // namespace detail

// The regular subdivision induced by the lower envelope of (p_i, h_i).
// Brute-force support enumeration; intended for desk-scale inputs and for
// certification, not for the enumeration hot path.
template <int N, class H>
std::vector<HullCell<N, H>> lower_hull(const std::vector<Pt<N>>& pts,
                                       const std::vector<H>& h) {
  if (pts.size() != h.size()) throw std::invalid_argument("lower_hull: sizes");
  size_t n = pts.size();
  if (n < N + 1) throw degeneracy_error("lower_hull: too few points");
  std::vector<HullCell<N, H>> cells;
  std::set<std::vector<int>> seen;
  auto subset_of_cell = [&](const std::array<int, N + 1>& idx) {
    for (const auto& c : cells) {
      bool all = true;
      for (int i : idx)
        if (!std::binary_search(c.members.begin(), c.members.end(), i)) {
          all = false;
          break;
        }
      if (all) return true;
    }
    return false;
  };
  std::array<int, N + 1> idx{};
  // iterate over all (N+1)-combinations
  std::vector<int> comb(N + 1);
  std::iota(comb.begin(), comb.end(), 0);
  bool done = n < static_cast<size_t>(N + 1);
  while (!done) {
    for (int i = 0; i <= N; ++i) idx[i] = comb[i];
    if (!subset_of_cell(idx)) {
      auto s = detail::solve_support<N, H>(pts, h, idx);
      if (s) {
        bool ok = true;
        for (size_t t = 0; t < n && ok; ++t) {
          H val = s->eval(pts[t]);
          if (val > h[t]) ok = false;
        }
        if (ok) {
          std::vector<int> members;
          for (size_t t = 0; t < n; ++t)
            if (s->eval(pts[t]) == h[t]) members.push_back(static_cast<int>(t));
          if (seen.insert(members).second)
            cells.push_back(HullCell<N, H>{members, *s});
        }
      }
    }
    // next combination
    int i = N;
    while (i >= 0 && comb[i] == static_cast<int>(n) - (N + 1) + i) --i;
    if (i < 0) {
      done = true;
    } else {
      ++comb[i];
      for (int j = i + 1; j <= N; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  std::sort(cells.begin(), cells.end(),
            [](const HullCell<N, H>& a, const HullCell<N, H>& b) {
              return a.members < b.members;
            });
  return cells;
}

}  // namespace tropdisc
