#pragma once

// The ordered symbolic coefficient field for Mikhalkin-position point
// configurations: polynomials in a positive infinitesimal eps (direction
// genericity) tensored with the scale chain 1 << M_1 << ... << M_N << TOP.
// Every inequality used by the lattice path algorithm is decided here.

#include <climits>
#include <sstream>
#include <vector>

#include "tropdisc/exact_lattice.hpp"

namespace tropdisc {

// Dense polynomial in eps with rational coefficients. Sign semantics are
// those of eps -> 0+: the lowest-degree nonzero coefficient decides.
class EpsPoly {
 public:
  EpsPoly() = default;
  explicit EpsPoly(Rat constant) {
    if (constant != 0) c_.push_back(std::move(constant));
  }
  explicit EpsPoly(const Int& constant) : EpsPoly(Rat(constant)) {}
  static EpsPoly monomial(int degree, Rat coeff) {
    EpsPoly p;
    if (coeff != 0) {
      p.c_.assign(degree + 1, Rat(0));
      p.c_[degree] = std::move(coeff);
    }
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rat coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0);
  }

  int sign() const {
    for (const auto& q : c_) {
      if (q > 0) return 1;
      if (q < 0) return -1;
    }
    return 0;
  }

  EpsPoly operator-() const {
    EpsPoly r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
  }
  EpsPoly operator+(const EpsPoly& o) const {
    EpsPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
  }
  EpsPoly operator-(const EpsPoly& o) const { return *this + (-o); }
  EpsPoly operator*(const EpsPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    EpsPoly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    r.trim();
    return r;
  }
  EpsPoly operator*(const Rat& s) const {
    if (s == 0) return {};
    EpsPoly r = *this;
    for (auto& q : r.c_) q *= s;
    return r;
  }
  EpsPoly operator/(const Rat& s) const {
    EpsPoly r = *this;
    for (auto& q : r.c_) q /= s;
    return r;
  }
  bool operator==(const EpsPoly& o) const { return c_ == o.c_; }
  bool operator<(const EpsPoly& o) const { return (*this - o).sign() < 0; }

  Rat eval(const Rat& eps) const {
    Rat v(0), pw(1);
    for (const auto& q : c_) {
      v += q * pw;
      pw *= eps;
    }
    return v;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!first) os << (c_[i] > 0 ? "+" : "");
      os << c_[i];
      if (i == 1) os << "*e";
      if (i > 1) os << "*e^" << i;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

// <w, v> with v = (1, eps, eps^2); zero iff w = 0, and the induced point
// order is exactly lexicographic on the coordinates.
inline EpsPoly eps_inner(const LatticePoint& w) {
  EpsPoly p = EpsPoly::monomial(0, Rat(w[0]));
  p = p + EpsPoly::monomial(1, Rat(w[1]));
  p = p + EpsPoly::monomial(2, Rat(w[2]));
  return p;
}

// Scale index space: 0 = constants, 1..N = M_s, kTopScale = an element
// dominating every M_s (the "-c'_0 >> max" device of the location lemmas).
constexpr int kTopScale = INT_MAX;

// Linear combination sum_s poly_s(eps) * M_s. The model is linear in the M
// scales; products of two non-constant ScaleValues are a hard error.
class ScaleValue {
 public:
  ScaleValue() = default;
  explicit ScaleValue(Rat constant) {
    EpsPoly p{std::move(constant)};
    if (!p.is_zero()) t_.push_back({0, std::move(p)});
  }
  ScaleValue(const Int& constant) : ScaleValue(Rat(constant)) {}       // NOLINT
  ScaleValue(long constant) : ScaleValue(Rat(constant)) {}             // NOLINT
  ScaleValue(int constant) : ScaleValue(Rat(constant)) {}              // NOLINT
  static ScaleValue term(int scale, EpsPoly p) {
    ScaleValue v;
    if (!p.is_zero()) v.t_.push_back({scale, std::move(p)});
    return v;
  }
  static ScaleValue scale_unit(int scale) {
    return term(scale, EpsPoly(Rat(1)));
  }
  static ScaleValue top() { return scale_unit(kTopScale); }

  bool is_zero() const { return t_.empty(); }
  bool has_top() const { return !t_.empty() && t_.back().first == kTopScale; }
  int max_scale() const { return t_.empty() ? -1 : t_.back().first; }
  EpsPoly coeff(int scale) const {
    for (const auto& [s, p] : t_)
      if (s == scale) return p;
    return {};
  }

  ScaleValue operator-() const {
    ScaleValue r = *this;
    for (auto& [s, p] : r.t_) p = -p;
    return r;
  }
  ScaleValue operator+(const ScaleValue& o) const {
    ScaleValue r;
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
      if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
        r.t_.push_back(t_[i++]);
      } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
        r.t_.push_back(o.t_[j++]);
      } else {
        EpsPoly p = t_[i].second + o.t_[j].second;
        if (!p.is_zero()) r.t_.push_back({t_[i].first, std::move(p)});
        ++i;
        ++j;
      }
    }
    return r;
  }
  ScaleValue operator-(const ScaleValue& o) const { return *this + (-o); }
  ScaleValue operator*(const EpsPoly& f) const {
    ScaleValue r;
    if (f.is_zero()) return r;
    for (const auto& [s, p] : t_) {
      EpsPoly q = p * f;
      if (!q.is_zero()) r.t_.push_back({s, std::move(q)});
    }
    return r;
  }
  ScaleValue operator*(const Rat& f) const { return *this * EpsPoly(f); }
  ScaleValue operator*(const Int& f) const { return *this * EpsPoly(Rat(f)); }
  ScaleValue operator/(const Rat& f) const { return *this * Rat(1 / f); }
  ScaleValue operator/(const Int& f) const { return *this * Rat(Rat(1) / Rat(f)); }

  // Total order: compare eps-coefficients from the highest present scale
  // downward; the first nonzero difference decides by its eps-sign.
  int sign() const {
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      int s = it->second.sign();
      if (s != 0) return s;
    }
    return 0;
  }
  bool operator==(const ScaleValue& o) const { return t_ == o.t_; }
  bool operator!=(const ScaleValue& o) const { return !(*this == o); }
  bool operator<(const ScaleValue& o) const { return (*this - o).sign() < 0; }
  bool operator>(const ScaleValue& o) const { return o < *this; }
  bool operator<=(const ScaleValue& o) const { return !(o < *this); }
  bool operator>=(const ScaleValue& o) const { return !(*this < o); }

  // Numeric instantiation: eps = 1/E, M_s = B^s, TOP = B^top_exp.
  Rat eval_numeric(const Rat& big_e, const Rat& big_b, int top_exp) const {
    Rat v(0);
    Rat eps = Rat(1) / big_e;
    for (const auto& [s, p] : t_) {
      int e = (s == kTopScale) ? top_exp : s;
      Rat pw(1);
      for (int i = 0; i < e; ++i) pw *= big_b;
      v += p.eval(eps) * pw;
    }
    return v;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, p] : t_) {
      if (!first) os << " + ";
      os << "(" << p.str() << ")";
      if (s == kTopScale)
        os << "*TOP";
      else if (s > 0)
        os << "*M" << s;
      first = false;
    }
    return os.str();
  }

  const std::vector<std::pair<int, EpsPoly>>& terms() const { return t_; }

 private:
  std::vector<std::pair<int, EpsPoly>> t_;  // sorted by scale, no zero terms
};

// Sign of (x - y) + M_scale * p, evaluated from the highest scale downward.
inline int sign_diff_plus_term(const ScaleValue& x, const ScaleValue& y,
                               int scale, const EpsPoly& p) {
  int ix = static_cast<int>(x.terms().size()) - 1;
  int iy = static_cast<int>(y.terms().size()) - 1;
  bool extra = !p.is_zero();
  for (;;) {
    int cur = INT_MIN;
    if (ix >= 0) cur = std::max(cur, x.terms()[ix].first);
    if (iy >= 0) cur = std::max(cur, y.terms()[iy].first);
    if (extra) cur = std::max(cur, scale);
    if (cur == INT_MIN) return 0;
    EpsPoly acc;
    if (ix >= 0 && x.terms()[ix].first == cur) acc = acc + x.terms()[ix--].second;
    if (iy >= 0 && y.terms()[iy].first == cur) acc = acc - y.terms()[iy--].second;
    if (extra && scale == cur) {
      acc = acc + p;
      extra = false;
    }
    int s = acc.sign();
    if (s != 0) return s;
  }
}

// Sign of sum coef_i * value_i, evaluated from the highest scale downward
// with early exit; avoids materializing the combination.
inline int sign_combination(
    const std::vector<std::pair<Int, const ScaleValue*>>& parts) {
  // positions walk each term's scale list from the top
  std::vector<int> pos(parts.size());
  for (size_t i = 0; i < parts.size(); ++i)
    pos[i] = static_cast<int>(parts[i].second->terms().size()) - 1;
  for (;;) {
    int scale = INT_MIN;
    for (size_t i = 0; i < parts.size(); ++i)
      if (pos[i] >= 0)
        scale = std::max(scale, parts[i].second->terms()[pos[i]].first);
    if (scale == INT_MIN) return 0;
    EpsPoly acc;
    for (size_t i = 0; i < parts.size(); ++i) {
      if (pos[i] < 0) continue;
      const auto& t = parts[i].second->terms()[pos[i]];
      if (t.first != scale) continue;
      if (parts[i].first != 0)
        acc = acc + t.second * Rat(parts[i].first);
      --pos[i];
    }
    int s = acc.sign();
    if (s != 0) return s;
  }
}

inline int compare(const ScaleValue& a, const ScaleValue& b) {
  return (a - b).sign();
}
inline int sign(const ScaleValue& a) { return a.sign(); }

inline ScaleValue operator*(const Int& f, const ScaleValue& v) { return v * f; }
inline ScaleValue operator*(const Rat& f, const ScaleValue& v) { return v * f; }

}  // namespace tropdisc
