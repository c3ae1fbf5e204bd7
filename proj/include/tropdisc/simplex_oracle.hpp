#pragma once

// Closed-form evaluation of the per-family surface counts on the simplex,
// written as naive loops straight from the family descriptions and sharing
// no code with the enumerator. Used to cross-validate enumeration results.

#include "tropdisc/multiplicity_engine.hpp"

namespace tropdisc {

struct OracleBreakdown {
  long d = 0;
  // type E: interior points (mt 8), points (i,0,l) on the y=0 facet
  // (mt 2(d-i+1)), top facet points (mt 2(d-i-1))
  Int e_interior = 0, e_axis = 0, e_top = 0, e_total = 0;
  // type D: the three main families plus the top-edge extras, mt 2 each
  Int d_case1 = 0, d_case2 = 0, d_case3 = 0, d_extra = 0, d_total = 0;
  // type A: tuples Q' and Q'', mt 1 each
  Int a_qprime = 0, a_qsecond = 0, a_total = 0;
  Int grand = 0;
};

inline OracleBreakdown oracle_breakdown(long d) {
  if (d < 2) throw std::domain_error("oracle_breakdown: d >= 2 required");
  OracleBreakdown o;
  o.d = d;
  for (long i = 1; i < d; ++i)
    for (long j = 1; i + j < d; ++j)
      for (long l = 1; l < d - i - j; ++l) o.e_interior += 8;
  for (long i = 1; i < d; ++i)
    for (long l = 1; l < d - i; ++l) o.e_axis += 2 * (d - i + 1);
  for (long i = 0; i <= d - 1; ++i)
    for (long j = 1; i + j <= d - 1; ++j) o.e_top += 2 * (d - i - 1);
  o.e_total = o.e_interior + o.e_axis + o.e_top;

  for (long i = 1; i < d; ++i)
    for (long j = 1; j < d - i; ++j)
      for (long l = 0; l <= d - i - j; ++l) o.d_case1 += 2;
  for (long i = 1; i < d; ++i)
    for (long j = 0; j < d - i; ++j)
      for (long l = 0; l <= d - i - j - 2; ++l) o.d_case2 += 2;
  // the stated case-3 range ends at l = d-i-j-1, but containment of
  // (i-1, j, l+1) in the simplex allows l = d-i-j, and the d = 3 count of
  // four surfaces pins the inclusive bound
  for (long i = 1; i < d; ++i)
    for (long j = 1; j <= d - i; ++j)
      for (long l = 0; l <= d - i - j; ++l) o.d_case3 += 2;
  for (long i = 0; i < d; ++i)
    for (long j = 1; j < d - i - 1; ++j) o.d_extra += 2;
  o.d_total = o.d_case1 + o.d_case2 + o.d_case3 + o.d_extra;

  for (long i = 0; i < d; ++i)
    for (long j = 1; j <= d - i; ++j) {
      for (long l = 2; j + l <= d - i - 1; ++l) o.a_qprime += 1;
      for (long l = 0; j + l < d - i - 2; ++l) o.a_qsecond += 1;
    }
  o.a_total = o.a_qprime + o.a_qsecond;
  o.grand = o.e_total + o.d_total + o.a_total;
  return o;
}

// ---------------------------------------------------------------------------
// Cross-check of the general enumerator against the oracle: per-type totals,
// per-family itemization (records bucketed by the position of w_k), and the
// closed-form grand total 4(d-1)^3.

struct CheckReport {
  bool pass = true;
  std::vector<std::string> diffs;
  OracleBreakdown oracle;
  Int enum_total = 0;
  std::map<CircuitType, Int> enum_by_type;

  void mismatch(const std::string& what, const Int& got, const Int& want) {
    if (got == want) return;
    pass = false;
    std::ostringstream os;
    os << what << ": enumerator " << got << ", expected " << want;
    diffs.push_back(os.str());
  }
};

inline CheckReport cross_check(long d, int jobs = 1) {
  CheckReport rep;
  rep.oracle = oracle_breakdown(d);
  auto poly = simplex_polytope(static_cast<int>(d));
  auto s = order_support(poly);
  auto deg = degree(poly, jobs);
  rep.enum_total = deg.total;
  rep.enum_by_type = deg.by_type;

  // bucket mt by the appendix families via the position of w_k
  Int e_interior = 0, e_axis = 0, e_top = 0;
  Int d_case1 = 0, d_case2 = 0, d_case3 = 0, d_extra = 0, d_other = 0;
  for (const auto& [r, m] : deg.surfaces) {
    if (m.mt == 0) continue;
    const LatticePoint& wk = s.points[r.path.k];
    Int i = wk[0], j = wk[1], l = wk[2];
    if (r.circuit.type == CircuitType::E) {
      if (i > 0 && j > 0 && l > 0 && i + j + l < d)
        e_interior += m.mt;
      else if (i > 0 && j == 0 && l > 0 && i + l < d)
        e_axis += m.mt;
      else if (j > 0 && i + j + l == d)
        e_top += m.mt;
      else
        rep.mismatch("unexpected E surface at w_k=" + to_string(wk), m.mt, 0);
    } else if (r.circuit.type == CircuitType::D) {
      if (i > 0 && j > 0 && l == 0 && i + j < d)
        d_case1 += m.mt;
      else if (i > 0 && i + j + l == d && j < d - i)
        d_case2 += m.mt;
      else if (i > 0 && j == 0 && l == 0)
        d_case3 += m.mt;
      else if (j == d - i && l == 0)
        d_extra += m.mt;
      else
        d_other += m.mt;
    }
  }
  rep.mismatch("E interior family", e_interior, rep.oracle.e_interior);
  rep.mismatch("E axis family", e_axis, rep.oracle.e_axis);
  rep.mismatch("E top-facet family", e_top, rep.oracle.e_top);
  rep.mismatch("E total", rep.enum_by_type[CircuitType::E],
               rep.oracle.e_total);
  rep.mismatch("A total", rep.enum_by_type[CircuitType::A],
               rep.oracle.a_total);
  rep.mismatch("D case 1", d_case1, rep.oracle.d_case1);
  rep.mismatch("D case 2", d_case2, rep.oracle.d_case2);
  rep.mismatch("D case 3", d_case3, rep.oracle.d_case3);
  rep.mismatch("D top-edge extras", d_extra, rep.oracle.d_extra);
  rep.mismatch("D outside known families", d_other, 0);
  rep.mismatch("B surfaces on the simplex",
               rep.enum_by_type[CircuitType::B], 0);
  rep.mismatch("C surfaces on the simplex",
               rep.enum_by_type[CircuitType::C], 0);
  Int want_total = Int(4) * (d - 1) * (d - 1) * (d - 1);
  rep.mismatch("grand total vs 4(d-1)^3", rep.enum_total, want_total);
  return rep;
}

}  // namespace tropdisc
