#pragma once

// Ordered supports, marked lattice paths, nu assignments from point
// conditions, and the smooth-extension subdivision machinery.

#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "tropdisc/exact_lattice.hpp"
#include "tropdisc/scale_field.hpp"

namespace tropdisc {

// ---------------------------------------------------------------------------
// OrderedSupport: the lattice points of Delta in the order induced by
// v = (1, eps, eps^2), which is lexicographic on coordinates.

struct OrderedSupport {
  Polytope polytope;
  std::vector<LatticePoint> points;  // w_0 < w_1 < ... < w_{N+1}
  std::vector<EpsPoly> eps;          // cached <w_i, v>
  int N = 0;

  int index_of(const LatticePoint& p) const {
    auto it = std::lower_bound(points.begin(), points.end(), p, lex_less<3>);
    if (it == points.end() || !(*it == p)) return -1;
    return static_cast<int>(it - points.begin());
  }
  int size() const { return static_cast<int>(points.size()); }
};

inline OrderedSupport order_support(const Polytope& p) {
  OrderedSupport s;
  s.polytope = p;
  s.points = p.lattice_points();  // already lex sorted
  if (s.points.size() < 3)
    throw degeneracy_error("order_support: need N >= 1");
  s.N = static_cast<int>(s.points.size()) - 2;
  for (const auto& w : s.points) s.eps.push_back(eps_inner(w));
  return s;
}

// ---------------------------------------------------------------------------
// Marked lattice paths: Gamma_k (point w_k skipped) for k = 0..N+1 and
// Gamma_{k,k+1} (gap between w_k and w_{k+1}) for k = 1..N. Both have
// exactly N edges; the i-th edge in order carries the marked point x_i.

struct MarkedPath {
  enum class Kind { GammaK, GammaKK1 };
  Kind kind = Kind::GammaK;
  int k = 0;
  std::vector<std::pair<int, int>> edges;  // (a, b) support indices, a < b

  bool skips(int idx) const { return kind == Kind::GammaK && idx == k; }
  std::string name() const {
    std::ostringstream os;
    if (kind == Kind::GammaK)
      os << "Gamma_" << k;
    else
      os << "Gamma_" << k << "," << k + 1;
    return os.str();
  }
};

inline MarkedPath gamma_k(const OrderedSupport& s, int k) {
  MarkedPath p;
  p.kind = MarkedPath::Kind::GammaK;
  p.k = k;
  int prev = -1;
  for (int i = 0; i < s.size(); ++i) {
    if (i == k) continue;
    if (prev >= 0) p.edges.push_back({prev, i});
    prev = i;
  }
  assert(static_cast<int>(p.edges.size()) == s.N);
  return p;
}

inline MarkedPath gamma_kk1(const OrderedSupport& s, int k) {
  MarkedPath p;
  p.kind = MarkedPath::Kind::GammaKK1;
  p.k = k;
  for (int i = 0; i + 1 < s.size(); ++i) {
    if (i == k) continue;  // the gap [w_k, w_{k+1}]
    p.edges.push_back({i, i + 1});
  }
  assert(static_cast<int>(p.edges.size()) == s.N);
  return p;
}

inline std::vector<MarkedPath> marked_paths(const OrderedSupport& s) {
  std::vector<MarkedPath> out;
  for (int k = 0; k <= s.N + 1; ++k) out.push_back(gamma_k(s, k));
  for (int k = 1; k <= s.N; ++k) out.push_back(gamma_kk1(s, k));
  return out;
}

// ---------------------------------------------------------------------------
// NuAssignment: tropical polynomial coefficients c_w (heights nu = -c)
// pinned by the point conditions along a marked path, plus the circuit
// relation for the coefficient the path leaves free.

struct NuAssignment {
  std::vector<ScaleValue> c;
  std::vector<bool> defined;

  ScaleValue nu(int i) const { return -c[i]; }
  std::vector<ScaleValue> nu_vector() const {
    std::vector<ScaleValue> h(c.size());
    for (size_t i = 0; i < c.size(); ++i) h[i] = -c[i];
    return h;
  }
  bool all_defined() const {
    for (bool b : defined)
      if (!b) return false;
    return true;
  }
};

// Circuit relation data as used by nu_from_path: support indices (sorted)
// and the primitive relation coefficients in the same order.
struct CircuitRelation {
  std::vector<int> indices;
  AffineRelation relation;
};

inline NuAssignment nu_from_path(
    const OrderedSupport& s, const MarkedPath& path,
    const std::optional<CircuitRelation>& circuit = std::nullopt) {
  NuAssignment nu;
  int n = s.size();
  nu.c.assign(n, ScaleValue());
  nu.defined.assign(n, false);

  auto tie_edge = [&](int a, int b, int marked_index) {
    // c_b + M_i <w_b, v> = c_a + M_i <w_a, v>
    EpsPoly step = s.eps[b] - s.eps[a];
    nu.c[b] = nu.c[a] - ScaleValue::term(marked_index, step);
    nu.defined[b] = true;
  };

  if (path.kind == MarkedPath::Kind::GammaK) {
    int first = (path.k == 0) ? 1 : 0;
    nu.c[first] = ScaleValue();
    nu.defined[first] = true;
    for (size_t i = 0; i < path.edges.size(); ++i)
      tie_edge(path.edges[i].first, path.edges[i].second,
               static_cast<int>(i) + 1);
    if (circuit) {
      // relation determines c_k from the others
      const auto& idx = circuit->indices;
      const auto& lam = circuit->relation.coeffs;
      int pos = -1;
      for (size_t i = 0; i < idx.size(); ++i)
        if (idx[i] == path.k) pos = static_cast<int>(i);
      if (pos < 0)
        throw std::invalid_argument("nu_from_path: circuit must contain w_k");
      ScaleValue acc;
      for (size_t i = 0; i < idx.size(); ++i) {
        if (static_cast<int>(i) == pos) continue;
        if (!nu.defined[idx[i]])
          throw std::logic_error("nu_from_path: undefined circuit coefficient");
        acc = acc + nu.c[idx[i]] * lam[i];
      }
      nu.c[path.k] = -(acc / lam[pos]);
      nu.defined[path.k] = true;
    }
  } else {
    // Gamma_{k,k+1}: prefix chain from c_0 = 0, suffix chain from c_{k+1},
    // which only the circuit relation can pin down (type A).
    nu.c[0] = ScaleValue();
    nu.defined[0] = true;
    int k = path.k;
    for (int sdx = 0; sdx < k; ++sdx) tie_edge(sdx, sdx + 1, sdx + 1);
    if (!circuit)
      throw std::invalid_argument(
          "nu_from_path: Gamma_{k,k+1} is unsolvable without a circuit");
    const auto& idx = circuit->indices;
    const auto& lam = circuit->relation.coeffs;
    int nmax = idx.back();
    if (nmax == k + 1) {
      // unknown c_{k+1}; all other circuit members are in the prefix
      ScaleValue acc;
      for (size_t i = 0; i + 1 < idx.size(); ++i) {
        if (!nu.defined[idx[i]])
          throw std::logic_error("nu_from_path: circuit order mismatch");
        acc = acc + nu.c[idx[i]] * lam[i];
      }
      nu.c[k + 1] = -(acc / lam.back());
      nu.defined[k + 1] = true;
    } else if (nmax == k + 2 && idx.size() >= 2 && idx[idx.size() - 2] == k + 1) {
      // both c_{k+1}, c_{k+2} unknown; combine the relation with the marked
      // step c_{k+2} = c_{k+1} - M_{k+1} <w_{k+2} - w_{k+1}, v>
      Int lm = lam[idx.size() - 2];  // coefficient of w_{k+1}
      Int ln = lam.back();           // coefficient of w_{k+2}
      if (lm + ln == 0)
        throw std::invalid_argument("nu_from_path: degenerate gap relation");
      ScaleValue acc;
      for (size_t i = 0; i + 2 < idx.size(); ++i)
        acc = acc + nu.c[idx[i]] * lam[i];
      EpsPoly step = s.eps[k + 2] - s.eps[k + 1];
      ScaleValue rhs = ScaleValue::term(k + 1, step) * ln - acc;
      nu.c[k + 1] = rhs / Int(lm + ln);
      nu.defined[k + 1] = true;
      nu.c[k + 2] = nu.c[k + 1] - ScaleValue::term(k + 1, step);
      nu.defined[k + 2] = true;
    } else {
      throw std::invalid_argument(
          "nu_from_path: circuit does not close the gap");
    }
    for (int sdx = k + 1; sdx <= s.N; ++sdx) tie_edge(sdx, sdx + 1, sdx);
  }
  return nu;
}

// ---------------------------------------------------------------------------
// Subdivision: list of top cells as sorted support-index sets.

struct Subdivision {
  std::vector<std::vector<int>> cells;
  int dim = -1;

  bool has_cell(const std::vector<int>& c) const {
    return std::find(cells.begin(), cells.end(), c) != cells.end();
  }
};

namespace detail {

// facets of the convex hull of a small (<= ~6 point) full-dim cell, as
// vertex index subsets of the cell
inline std::vector<std::vector<int>> cell_facet_sets(
    const std::vector<LatticePoint>& pts, const std::vector<int>& cell,
    int dim, const std::array<LatticePoint, 3>& flat_dirs) {
  std::vector<std::vector<int>> out;
  size_t m = cell.size();
  if (m == static_cast<size_t>(dim) + 1) {  // simplex: drop one vertex
    for (size_t skip = 0; skip < m; ++skip) {
      std::vector<int> f;
      for (size_t i = 0; i < m; ++i)
        if (i != skip) f.push_back(cell[i]);
      out.push_back(std::move(f));
    }
    return out;
  }
  if (dim == 3) {
    std::vector<LatticePoint> cp;
    for (int i : cell) cp.push_back(pts[i]);
    auto facets = Polytope::hull_facets(cp);
    std::set<std::vector<int>> seen;
    for (const auto& f : facets) {
      std::vector<int> on;
      for (int i : cell)
        if (dot(f.normal, pts[i]) == f.offset) on.push_back(i);
      if (on.size() >= 3 && seen.insert(on).second) out.push_back(on);
    }
    return out;
  }
  if (dim == 2) {
    // order the polygon within its plane and take consecutive pairs
    LatticePoint n = primitive(cross(flat_dirs[0], flat_dirs[1]));
    Mat3 u = plane_to_z(n);
    std::vector<Pt2> proj;
    for (int i : cell) {
      LatticePoint q = u.apply(pts[i]);
      proj.push_back({q[0], q[1]});
    }
    auto hull = convex_hull_2d(proj);
    auto find_idx = [&](const Pt2& q) {
      for (size_t i = 0; i < proj.size(); ++i)
        if (proj[i] == q) return cell[i];
      throw std::logic_error("cell_facet_sets: lost vertex");
    };
    for (size_t i = 0; i < hull.size(); ++i) {
      int a = find_idx(hull[i]);
      int b = find_idx(hull[(i + 1) % hull.size()]);
      std::vector<int> f{a, b};
      std::sort(f.begin(), f.end());
      out.push_back(std::move(f));
    }
    return out;
  }
  // dim <= 1 with a non-simplex cell cannot occur
  throw std::logic_error("cell_facet_sets: unexpected cell");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Incremental builder for regular subdivisions in the scale field.
//
// Points inserted one at a time must carry heights that dominate everything
// before them (the smooth extension of the paper); then the update is the
// classical placing step: cone the new point over the visible part of the
// boundary. A circuit is attached with add_group: its points' heights tie at
// the top scale, and the new cells are recovered by exact support checks.

class SubdivisionBuilder {
 public:
  explicit SubdivisionBuilder(const std::vector<LatticePoint>* pts)
      : pts_(pts) {}

  int dim() const { return dim_; }
  const std::vector<std::vector<int>>& cells() const { return cells_; }
  const std::vector<int>& present() const { return present_; }

  Subdivision snapshot() const {
    Subdivision s;
    s.cells = cells_;
    std::sort(s.cells.begin(), s.cells.end());
    s.dim = dim_;
    return s;
  }

  void add_point(int idx) {
    const LatticePoint& p = (*pts_)[idx];
    if (present_.empty()) {
      present_.push_back(idx);
      cells_ = {{idx}};
      dim_ = 0;
      p0_ = idx;
      return;
    }
    LatticePoint d = p - (*pts_)[p0_];
    if (!in_flat(d)) {
      // dimension jump: every top cell cones to the new point
      flat_dirs_[dim_] = d;
      ++dim_;
      std::vector<std::vector<int>> next;
      for (auto c : cells_) {
        c.push_back(idx);
        std::sort(c.begin(), c.end());
        next.push_back(std::move(c));
      }
      cells_ = std::move(next);
      present_.push_back(idx);
      rebuild_boundary();
      return;
    }
    // cone over strictly visible boundary facets
    std::vector<std::vector<int>> add;
    for (const auto& [facet, owner] : boundary_) {
      if (visible(facet, owner, p)) {
        std::vector<int> c = facet;
        c.push_back(idx);
        std::sort(c.begin(), c.end());
        add.push_back(std::move(c));
      }
    }
    if (add.empty())
      throw std::logic_error("add_point: point not beyond the domain");
    for (auto& c : add) cells_.push_back(std::move(c));
    present_.push_back(idx);
    rebuild_boundary();
  }

  // Attach a group of points whose heights tie at the dominant scale (the
  // circuit points a path's recurrences cannot order). New cells are all
  // supports through >= 1 group point and a face of the current complex.
  void add_group(const std::vector<int>& group,
                 const std::vector<ScaleValue>& heights) {
    if (present_.empty() || dim_ < 0)
      throw std::logic_error("add_group: empty complex");
    // determine the dimension after the group joins
    std::array<LatticePoint, 3> new_dirs = flat_dirs_;
    int new_dim = dim_;
    for (int g : group) {
      LatticePoint d = (*pts_)[g] - (*pts_)[p0_];
      if (!in_flat_dirs(new_dirs, new_dim, d)) {
        new_dirs[new_dim] = d;
        ++new_dim;
      }
    }
    std::vector<std::vector<int>> found;
    if (new_dim == 3)
      found = group_cells<3>(group, heights, new_dim, new_dirs);
    else if (new_dim == 2)
      found = group_cells<2>(group, heights, new_dim, new_dirs);
    else
      found = group_cells<1>(group, heights, new_dim, new_dirs);
    if (found.empty()) throw std::logic_error("add_group: no cells found");
    if (new_dim > dim_) {
      cells_ = std::move(found);  // old cells become faces
      flat_dirs_ = new_dirs;
      dim_ = new_dim;
    } else {
      for (auto& c : found) cells_.push_back(std::move(c));
    }
    for (int g : group) present_.push_back(g);
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    rebuild_boundary();
  }

 private:
  bool in_flat_dirs(const std::array<LatticePoint, 3>& dirs, int dim,
                    const LatticePoint& d) const {
    if (is_zero(d)) return true;
    switch (dim) {
      case 0:
        return false;
      case 1:
        return is_zero(cross(dirs[0], d));
      case 2:
        return det3(dirs[0], dirs[1], d) == 0;
      default:
        return true;
    }
  }
  bool in_flat(const LatticePoint& d) const {
    return in_flat_dirs(flat_dirs_, dim_, d);
  }

  // outward functional of a boundary facet: positive strictly outside
  bool visible(const std::vector<int>& facet, int owner,
               const LatticePoint& q) const {
    const LatticePoint& f0 = (*pts_)[facet[0]];
    LatticePoint n{};
    if (dim_ == 3) {
      n = cross((*pts_)[facet[1]] - f0, (*pts_)[facet[2]] - f0);
    } else if (dim_ == 2) {
      LatticePoint pn = cross(flat_dirs_[0], flat_dirs_[1]);
      n = cross((*pts_)[facet[1]] - f0, pn);
    } else {  // dim_ == 1: facet is a single vertex
      n = flat_dirs_[0];
    }
    // orient away from the owner cell
    const auto& cell = cells_[owner];
    Int off = dot(n, f0);
    for (int i : cell) {
      Int v = dot(n, (*pts_)[i]) - off;
      if (v > 0) {
        n = {-n[0], -n[1], -n[2]};
        off = -off;
        break;
      }
      if (v < 0) break;
    }
    return dot(n, q) > off;
  }

  void rebuild_boundary() {
    boundary_.clear();
    if (dim_ < 1) return;
    std::map<std::vector<int>, std::pair<int, int>> count;  // facet -> (n, owner)
    for (size_t ci = 0; ci < cells_.size(); ++ci) {
      for (auto& f :
           detail::cell_facet_sets(*pts_, cells_[ci], dim_, flat_dirs_)) {
        std::sort(f.begin(), f.end());
        auto it = count.find(f);
        if (it == count.end())
          count[f] = {1, static_cast<int>(ci)};
        else
          it->second.first += 1;
      }
    }
    for (auto& [f, nc] : count)
      if (nc.first == 1) boundary_[f] = nc.second;
  }

  template <int N>
  std::vector<std::vector<int>> group_cells(
      const std::vector<int>& group, const std::vector<ScaleValue>& heights,
      int new_dim, const std::array<LatticePoint, 3>& new_dirs) {
    // reduced integer coordinates of the flat spanned by complex + group
    std::vector<int> all = present_;
    for (int g : group) all.push_back(g);
    std::map<int, Pt<N>> coord;
    Mat3 u;
    LatticePoint line_dir{};
    int line_axis = 0;
    if constexpr (N == 3) {
      for (int i : all) {
        const LatticePoint& q = (*pts_)[i];
        coord[i] = {q[0], q[1], q[2]};
      }
    } else if constexpr (N == 2) {
      LatticePoint n = primitive(cross(new_dirs[0], new_dirs[1]));
      u = plane_to_z(n);
      for (int i : all) {
        LatticePoint q = u.apply((*pts_)[i] - (*pts_)[p0_]);
        coord[i] = {q[0], q[1]};
      }
    } else {
      line_dir = primitive(new_dirs[0]);
      while (line_dir[line_axis] == 0) ++line_axis;
      for (int i : all) {
        LatticePoint d = (*pts_)[i] - (*pts_)[p0_];
        coord[i] = {d[line_axis] / line_dir[line_axis]};
      }
    }
    std::vector<Pt<N>> rpts;
    std::vector<ScaleValue> rh;
    std::vector<int> rid;  // reduced -> global
    for (int i : all) {
      rpts.push_back(coord[i]);
      rh.push_back(heights[i]);
      rid.push_back(i);
    }
    // candidate base faces of the current complex
    bool jump = new_dim > dim_;
    std::set<std::vector<int>> faces1, faces2;  // sizes new_dim, new_dim - 1
    auto collect = [&](const std::vector<int>& vertex_set) {
      collect_subsets(vertex_set, new_dim, faces1);
      if (new_dim >= 2) collect_subsets(vertex_set, new_dim - 1, faces2);
    };
    if (jump) {
      for (const auto& c : cells_) collect(c);
    } else {
      for (const auto& [f, owner] : boundary_) collect(f);
    }
    // keep candidates whose lifted hyperplane supports the lower hull;
    // the side of a lifted point is the sign of an integer-weighted
    // combination of heights, evaluated top scale first
    std::map<int, int> gidx;  // global -> reduced
    for (size_t i = 0; i < rid.size(); ++i) gidx[rid[i]] = static_cast<int>(i);
    std::set<std::vector<int>> cells_found;
    std::vector<std::pair<Int, const ScaleValue*>> parts(N + 2);
    auto try_candidate = [&](std::vector<int> base, const std::vector<int>& gs) {
      std::array<int, N + 1> idx{};
      size_t t = 0;
      for (int b : base) idx[t++] = gidx.at(b);
      for (int g : gs) idx[t++] = gidx.at(g);
      if (t != static_cast<size_t>(N) + 1) return;
      std::array<Pt<N>, N> d{};
      for (int i = 0; i < N; ++i) d[i] = rpts[idx[i + 1]] - rpts[idx[0]];
      Int bdet;
      if constexpr (N == 1)
        bdet = d[0][0];
      else if constexpr (N == 2)
        bdet = det2(d[0][0], d[0][1], d[1][0], d[1][1]);
      else
        bdet = det3(d[0], d[1], d[2]);
      if (bdet == 0) return;
      int bsign = bdet > 0 ? 1 : -1;
      std::vector<int> members;
      for (size_t p = 0; p < rpts.size(); ++p) {
        Pt<N> dp = rpts[p] - rpts[idx[0]];
        // cofactor expansion of the lifted determinant along the heights
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
        parts.push_back({c0, &rh[idx[0]]});
        for (int i = 0; i < N; ++i) parts.push_back({coef[i], &rh[idx[i + 1]]});
        parts.push_back({coef[N], &rh[p]});
        int side = sign_combination(parts) * bsign;
        if (side < 0) return;  // a lifted point lies below the hyperplane
        if (side == 0) members.push_back(rid[p]);
      }
      std::sort(members.begin(), members.end());
      cells_found.insert(std::move(members));
    };
    for (const auto& f : faces1)
      for (int g : group) try_candidate(f, {g});
    if (group.size() >= 2)
      for (const auto& f : faces2)
        for (size_t a = 0; a < group.size(); ++a)
          for (size_t b = a + 1; b < group.size(); ++b)
            try_candidate(f, {group[a], group[b]});
    std::vector<std::vector<int>> out;
    for (auto& c : cells_found) {
      // keep only full-dimensional cells containing a group point
      bool has_group = false;
      for (int g : group)
        if (std::binary_search(c.begin(), c.end(), g)) has_group = true;
      if (has_group && c.size() >= static_cast<size_t>(new_dim) + 1)
        out.push_back(c);
    }
    return out;
  }

  static void collect_subsets(const std::vector<int>& set, int size,
                              std::set<std::vector<int>>& out) {
    if (size <= 0 || set.size() < static_cast<size_t>(size)) return;
    std::vector<int> comb(size);
    std::vector<int> sorted = set;
    std::sort(sorted.begin(), sorted.end());
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == size) {
        out.insert(comb);
        return;
      }
      for (int i = start; i < static_cast<int>(sorted.size()); ++i) {
        comb[depth] = sorted[i];
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
  }

  const std::vector<LatticePoint>* pts_;
  std::vector<int> present_;
  std::vector<std::vector<int>> cells_;
  std::map<std::vector<int>, int> boundary_;  // facet -> owner cell
  std::array<LatticePoint, 3> flat_dirs_{};
  int dim_ = -1;
  int p0_ = -1;
};

// ---------------------------------------------------------------------------
// placing_triangulation: points added in order with ever-dominant heights.

inline Subdivision placing_triangulation(const std::vector<LatticePoint>& pts,
                                         const std::vector<int>& order) {
  SubdivisionBuilder b(&pts);
  for (int i : order) b.add_point(i);
  if (b.dim() != 3)
    throw degeneracy_error("placing_triangulation: points do not span 3-space");
  return b.snapshot();
}

inline Subdivision placing_triangulation(const std::vector<LatticePoint>& pts) {
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  return placing_triangulation(pts, order);
}

// extend_with_cell: attach a circuit cell whose points' heights tie at the
// dominant scale, then continue with smooth extensions of the remaining
// points (which again dominate).
inline Subdivision extend_with_cell(SubdivisionBuilder builder,
                                    const std::vector<int>& cell_new_points,
                                    const std::vector<int>& remaining,
                                    const NuAssignment& nu) {
  builder.add_group(cell_new_points, nu.nu_vector());
  for (int i : remaining) builder.add_point(i);
  return builder.snapshot();
}

// ---------------------------------------------------------------------------
// Regularity certificate: every cell's support function lies weakly below nu
// everywhere, strictly below at lattice points outside the cell's hull, and
// agrees with nu exactly on the cell.

struct CellSupport {
  AffineSupport<3, ScaleValue> fn;
};

inline std::optional<AffineSupport<3, ScaleValue>> cell_support(
    const std::vector<LatticePoint>& pts, const std::vector<int>& cell,
    const std::vector<ScaleValue>& heights) {
  // pick 4 affinely independent members
  size_t m = cell.size();
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b)
      for (size_t c = b + 1; c < m; ++c)
        for (size_t d = c + 1; d < m; ++d) {
          std::array<int, 4> idx{cell[a], cell[b], cell[c], cell[d]};
          if (det3(pts[idx[1]] - pts[idx[0]], pts[idx[2]] - pts[idx[0]],
                   pts[idx[3]] - pts[idx[0]]) == 0)
            continue;
          auto s = detail::solve_support<3, ScaleValue>(pts, heights, idx);
          if (s) return s;
        }
  return std::nullopt;
}

inline bool verify_regular(const Subdivision& sub,
                           const std::vector<LatticePoint>& pts,
                           const std::vector<int>& support_points,
                           const std::vector<ScaleValue>& heights) {
  for (const auto& cell : sub.cells) {
    auto s = cell_support(pts, cell, heights);
    if (!s) return false;
    // equality on the cell
    for (int i : cell)
      if (!(s->eval(pts[i]) == heights[i])) return false;
    // on or above everywhere, strictly above outside the cell hull
    std::vector<LatticePoint> hullpts;
    for (int i : cell) hullpts.push_back(pts[i]);
    for (int i : support_points) {
      ScaleValue val = s->eval(pts[i]);
      if (val > heights[i]) return false;
      if (val == heights[i]) {
        bool inside = Polytope::in_hull(hullpts, pts[i]);
        if (!inside) return false;
      }
    }
  }
  return true;
}

inline bool verify_regular(const Subdivision& sub,
                           const std::vector<LatticePoint>& pts,
                           const std::vector<int>& support_points,
                           const NuAssignment& nu) {
  for (int i : support_points)
    if (!nu.defined[i]) return false;
  return verify_regular(sub, pts, support_points, nu.nu_vector());
}

// Sum of normalized cell volumes (cells must be 3-dimensional).
inline Int covered_volume(const Subdivision& sub,
                          const std::vector<LatticePoint>& pts) {
  Int total = 0;
  for (const auto& cell : sub.cells) {
    std::vector<LatticePoint> cp;
    for (int i : cell) cp.push_back(pts[i]);
    total += normalized_volume(cp, 3);
  }
  return total;
}

// All edges (1-faces) of the subdivision, as sorted index pairs.
inline std::set<std::pair<int, int>> subdivision_edges(
    const Subdivision& sub, const std::vector<LatticePoint>& pts) {
  std::set<std::pair<int, int>> out;
  for (const auto& cell : sub.cells) {
    if (cell.size() == 4) {  // simplex: all pairs
      for (size_t a = 0; a < 4; ++a)
        for (size_t b = a + 1; b < 4; ++b)
          out.insert({cell[a], cell[b]});
      continue;
    }
    std::vector<LatticePoint> cp;
    for (int i : cell) cp.push_back(pts[i]);
    auto facets = Polytope::hull_facets(cp);
    // an edge is the intersection of two facets with exactly 2 common pts
    for (size_t f = 0; f < facets.size(); ++f)
      for (size_t g = f + 1; g < facets.size(); ++g) {
        std::vector<int> common;
        for (size_t t = 0; t < cell.size(); ++t)
          if (dot(facets[f].normal, cp[t]) == facets[f].offset &&
              dot(facets[g].normal, cp[t]) == facets[g].offset)
            common.push_back(cell[t]);
        if (common.size() == 2) out.insert({common[0], common[1]});
      }
  }
  return out;
}

inline bool contains_path_edges(const Subdivision& sub,
                                const std::vector<LatticePoint>& pts,
                                const MarkedPath& path) {
  auto edges = subdivision_edges(sub, pts);
  for (const auto& [a, b] : path.edges)
    if (!edges.count({std::min(a, b), std::max(a, b)})) return false;
  return true;
}

// Minimal face of the cell's hull containing q (q inside the hull):
// the returned set is empty when q is outside.
inline std::vector<int> minimal_face_containing(
    const std::vector<LatticePoint>& pts, const std::vector<int>& cell,
    const LatticePoint& q) {
  std::vector<LatticePoint> cp;
  for (int i : cell) cp.push_back(pts[i]);
  auto facets = Polytope::hull_facets(cp);
  if (facets.empty()) return {};  // degenerate cell
  for (const auto& f : facets)
    if (dot(f.normal, q) > f.offset) return {};
  std::vector<int> face = cell;
  for (const auto& f : facets) {
    if (dot(f.normal, q) != f.offset) continue;
    std::vector<int> keep;
    for (size_t t = 0; t < cell.size(); ++t)
      if (dot(f.normal, cp[t]) == f.offset &&
          std::find(face.begin(), face.end(), cell[t]) != face.end())
        keep.push_back(cell[t]);
    face = keep;
  }
  return face;
}

}  // namespace tropdisc
