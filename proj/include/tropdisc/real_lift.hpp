#pragma once

// Real-lift counting for the simplex family: sign propagation along
// connected paths and the parity rules deciding which type-D pairs are
// real. Everything here is closed-form evaluation of the simplex families;
// arbitrary polytopes are out of scope for real counts.

#include "tropdisc/exact_lattice.hpp"

#include <stdexcept>
#include <vector>

namespace tropdisc {

// alpha_{w_r} for the real point configuration p_i = (t^-x, t^-y, t^-z):
// +1 at w_0, then alternating with a parity flip across the skipped index.
struct SignPattern {
  int k = 0;
  std::vector<int> signs;  // per support index 0..N+1
};

inline SignPattern sign_pattern(int k, int npoints) {
  if (k < 1 || k > npoints - 1)
    throw std::domain_error("sign_pattern: k out of range");
  SignPattern sp;
  sp.k = k;
  sp.signs.assign(npoints, 1);
  for (int r = 1; r < npoints; ++r) {
    if (r < k)
      sp.signs[r] = (r % 2 == 0) ? 1 : -1;
    else if (r > k)
      sp.signs[r] = (r % 2 == 0) ? -1 : 1;
    else
      sp.signs[r] = 0;  // skipped point: no path condition
  }
  return sp;
}

enum class DFamily { Case1, Case2, Case3 };

// Parity rules for the three type-D families of the simplex: the two lifted
// surfaces are both real exactly when the stated half-integer is odd
// (cases 1 and 2) or d - i - j is even (case 3).
inline bool parity_D(DFamily family, long d, long i, long j, long l = 0) {
  switch (family) {
    case DFamily::Case1: {
      if (!(i > 0 && 0 < j && j < d - i && 0 <= l && l <= d - i - j))
        throw std::domain_error("parity_D: case 1 indices out of range");
      long v = (3 * (d - i) + 2 + 2 * j + 2 * l) * (d - i + 1) / 2;
      return v % 2 == 1;
    }
    case DFamily::Case2: {
      if (!(i > 0 && 0 <= j && j < d - i && 0 <= l && l <= d - i - j - 2))
        throw std::domain_error("parity_D: case 2 indices out of range");
      long v = (d - i + 2 + 2 * l) * (d - i + 1) / 2;
      return v % 2 == 1;
    }
    case DFamily::Case3: {
      if (!(0 < i && i < d && 1 <= j && j <= d - i))
        throw std::domain_error("parity_D: case 3 indices out of range");
      return (d - i - j) % 2 == 0;
    }
  }
  throw std::domain_error("parity_D: unknown family");
}

struct RealReport {
  long d = 0;
  Int a_count = 0;  // each admissible pentatope tuple lifts to one real surface
  Int d_count = 0;  // 2 per parity-real family member
  Int e_count = 0;  // top-facet family: all lifts real
  Int total = 0;
  // mt mass the parity rules do not decide: the in-path E families
  Int undecided_mt = 0;
  // the extra top-edge D family has no parity rule and is excluded
  Int excluded_extra_d = 0;
  struct DVerdict {
    DFamily family;
    long i, j, l;
    bool real;
  };
  std::vector<DVerdict> d_families;
};

inline RealReport real_lower_bound(long d) {
  if (d < 2) throw std::domain_error("real_lower_bound: d >= 2 required");
  RealReport r;
  r.d = d;
  // type A: tuples Q'_{j,l} and Q''_{j,l} at w_k = (i, d-i, 0)
  for (long i = 0; i < d; ++i)
    for (long j = 1; j <= d - i; ++j) {
      for (long l = 2; j + l <= d - i - 1; ++l) r.a_count += 1;  // Q'
      for (long l = 0; j + l < d - i - 2; ++l) r.a_count += 1;   // Q''
    }
  // type D families
  for (long i = 1; i < d; ++i)
    for (long j = 1; j < d - i; ++j)
      for (long l = 0; l <= d - i - j; ++l) {
        bool re = parity_D(DFamily::Case1, d, i, j, l);
        if (re) r.d_count += 2;
        r.d_families.push_back({DFamily::Case1, i, j, l, re});
      }
  for (long i = 1; i < d; ++i)
    for (long j = 0; j < d - i; ++j)
      for (long l = 0; l <= d - i - j - 2; ++l) {
        bool re = parity_D(DFamily::Case2, d, i, j, l);
        if (re) r.d_count += 2;
        r.d_families.push_back({DFamily::Case2, i, j, l, re});
      }
  for (long i = 1; i < d; ++i)
    for (long j = 1; j <= d - i; ++j)
      for (long l = 0; l <= d - i - j; ++l) {
        bool re = parity_D(DFamily::Case3, d, i, j);
        if (re) r.d_count += 2;
        r.d_families.push_back({DFamily::Case3, i, j, l, re});
      }
  // type E, top facet family: w_k = (i, j, d-i-j), j > 0, i + j <= d-1;
  // all 2(d-i-1) lifted surfaces are real
  for (long i = 0; i + 1 <= d - 1; ++i)
    for (long j = 1; i + j <= d - 1; ++j) r.e_count += 2 * (d - i - 1);
  // in-path E families: reality undecided, never counted
  for (long i = 1; i < d; ++i)
    for (long j = 1; i + j < d; ++j)
      for (long l = 1; l < d - i - j; ++l) r.undecided_mt += 8;
  for (long i = 1; i < d; ++i)
    for (long l = 1; l < d - i; ++l) r.undecided_mt += 2 * (d - i + 1);
  // extra top-edge D family: no parity rule
  for (long i = 0; i < d; ++i)
    for (long j = 1; j < d - i - 1; ++j) r.excluded_extra_d += 2;
  r.total = r.a_count + r.d_count + r.e_count;
  return r;
}

}  // namespace tropdisc
