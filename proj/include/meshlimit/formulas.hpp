#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "meshlimit/exact.hpp"

namespace meshlimit {

// Enumerated pattern families with a proved (or bounded) containment count.
// row/col/row1 are parametrized by the pattern length k; the length-4
// families are fixed. border_zero is the factorial upper bound for the
// bordered length-4 patterns whose containment ratio vanishes.
enum class Family {
  row,
  col,
  row1,
  border,
  border_zero,
  topbottom_nonadjacent,
  topbottom_adjacent,
  sideshade,
  nocorner,
};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::row: return "row";
    case Family::col: return "col";
    case Family::row1: return "row1";
    case Family::border: return "border";
    case Family::border_zero: return "border_zero";
    case Family::topbottom_nonadjacent: return "topbottom_nonadjacent";
    case Family::topbottom_adjacent: return "topbottom_adjacent";
    case Family::sideshade: return "sideshade";
    case Family::nocorner: return "nocorner";
  }
  throw std::logic_error("family_name: bad enum");
}

inline Family family_from_name(std::string_view name) {
  for (Family f : {Family::row, Family::col, Family::row1, Family::border,
                   Family::border_zero, Family::topbottom_nonadjacent,
                   Family::topbottom_adjacent, Family::sideshade, Family::nocorner})
    if (family_name(f) == name) return f;
  throw std::invalid_argument("unknown formula family '" + std::string(name) + "'");
}

// k is the pattern length for row/col/row1 (ignored elsewhere); i is the
// unshaded box-row index, j the box-column index where applicable. -1 marks
// an unset parameter.
struct FormulaId {
  Family family;
  int k = 4;
  int i = -1;
  int j = -1;
};

// A count together with its share of S_n.
struct ExactValue {
  Int value;
  Rat ratio;  // value / n!
};

namespace detail {

inline ExactValue with_ratio(Int value, int n) {
  Rat r(value, factorial(n));
  return {std::move(value), std::move(r)};
}

inline void require_min_n(int n, int min_n, const char* what) {
  if (n < min_n)
    throw RangeError(std::string(what) + ": n must be at least " + std::to_string(min_n));
}

}  // namespace detail

// n!/k!: hosts containing a mesh pattern whose boxes fill every row except
// one. Independent of the pattern permutation and of which row is free.
inline ExactValue formula_row(int k, int n) {
  if (k < 1) throw std::invalid_argument("row formula: k must be positive");
  detail::require_min_n(n, k, "row formula");
  Int v = 1;
  for (int t = k + 1; t <= n; ++t) v *= t;
  return detail::with_ratio(std::move(v), n);
}

// (n-1)!/(k-1)!: one extra box in the free row costs a factor n/k.
inline ExactValue formula_row1(int k, int n) {
  if (k < 1) throw std::invalid_argument("row1 formula: k must be positive");
  detail::require_min_n(n, k, "row1 formula");
  Int v = 1;
  for (int t = k; t <= n - 1; ++t) v *= t;
  return detail::with_ratio(std::move(v), n);
}

// C(n-2,2)^2 (n-4)! for the four bordered length-4 patterns with interior
// endpoints (2143, 2413, 3142, 3412).
inline ExactValue formula_border(int n) {
  detail::require_min_n(n, 4, "border formula");
  Int c = binomial(n - 2, 2);
  return detail::with_ratio(c * c * factorial(n - 4), n);
}

// 2 (n-1)!: upper bound for the remaining bordered length-4 patterns, whose
// containing hosts must start or end with an extreme letter.
inline Int border0_bound(int n) {
  if (n < 1) throw RangeError("border bound: n must be positive");
  return 2 * factorial(n - 1);
}

// sum_{k=2}^{n-2} sum_{l=k+1}^{n-1} [(n-2)! - (l-k-1)!(k-1)!(n-l)! C(n-2, l-k-1)]
// for the twelve top-and-bottom-shaded patterns whose middle letters are not
// adjacent. The subtracted product is carried across the inner loop by the
// exact update  sub(l+1) = sub(l) (n-l+k-1)/(n-l).
inline ExactValue formula_topbottom_nonadjacent(int n) {
  detail::require_min_n(n, 4, "topbottom formula");
  const Int full = factorial(n - 2);
  Int total = 0;
  for (int k = 2; k <= n - 2; ++k) {
    Int sub = factorial(k - 1) * factorial(n - k - 1);  // l = k+1 term
    for (int l = k + 1; l <= n - 1; ++l) {
      total += full - sub;
      if (l < n - 1) sub = exact_div(sub * (n - l + k - 1), Int(n - l));
    }
  }
  return detail::with_ratio(std::move(total), n);
}

// sum_{k=3}^{n-1} (n-k) [(n-2)! - (n-2)!/(k-1)!] for the twelve
// top-and-bottom-shaded patterns whose middle letters are adjacent.
inline ExactValue formula_topbottom_adjacent(int n) {
  detail::require_min_n(n, 4, "topbottom formula");
  const Int full = factorial(n - 2);
  Int q = exact_div(full, factorial(2));  // (n-2)!/(k-1)! at k = 3
  Int total = 0;
  for (int k = 3; k <= n - 1; ++k) {
    total += Int(n - k) * (full - q);
    if (k < n - 1) q = exact_div(q, Int(k));
  }
  return detail::with_ratio(std::move(total), n);
}

// (n-2)! [ (n-2)(n-3)/2 - sum_{k=2}^{n-2} (n-k-1)/k ] for the side-shaded
// pattern (2143, top and bottom rows plus the full right column).
inline ExactValue formula_sideshade(int n) {
  detail::require_min_n(n, 4, "sideshade formula");
  Rat bracket(Int(n - 2) * (n - 3), 2);
  for (int k = 2; k <= n - 2; ++k) bracket -= Rat(n - k - 1, k);
  Rat v = Rat(factorial(n - 2)) * bracket;
  if (denominator(v) != 1)
    throw std::logic_error("sideshade formula: non-integral value");
  return detail::with_ratio(numerator(v), n);
}

// The same count in its pre-simplification shape
// sum_{q=2}^{n-1} sum_{k=2}^{n-2} sum_{l=k+1}^{n-1} (n-3)! [1 - C(n-q-1,k-1)/C(n-3,k-1)].
// The summand does not mention l, so the inner sum contributes a factor
// (n-1-k); empty binomials vanish by convention.
inline ExactValue formula_sideshade_triple_sum(int n) {
  detail::require_min_n(n, 4, "sideshade formula");
  const Rat base(factorial(n - 3));
  Rat total = 0;
  for (int q = 2; q <= n - 1; ++q) {
    for (int k = 2; k <= n - 2; ++k) {
      Rat term = base * (1 - Rat(binomial(n - q - 1, k - 1), binomial(n - 3, k - 1)));
      total += Rat(n - 1 - k) * term;
    }
  }
  if (denominator(total) != 1)
    throw std::logic_error("sideshade triple sum: non-integral value");
  return detail::with_ratio(numerator(total), n);
}

// sum_{q=1}^{n-3} sum_{k=1}^{n-q-2} sum_{l=1}^{n-q-1-k}
//   (n-2)!/C(n-2,q-1) * C(n-k-l-2,q-1) * [1 - 1/C(k+l,k)]
// for the corner-free pattern (2143, top row full, bottom row missing its
// rightmost box).
inline ExactValue formula_nocorner(int n) {
  detail::require_min_n(n, 4, "nocorner formula");
  const Int full = factorial(n - 2);
  Rat total = 0;
  for (int q = 1; q <= n - 3; ++q) {
    const Rat lead(full, binomial(n - 2, q - 1));
    for (int k = 1; k <= n - q - 2; ++k) {
      for (int l = 1; l + k <= n - q - 1; ++l) {
        total += lead * Rat(binomial(n - k - l - 2, q - 1)) *
                 (1 - Rat(1, binomial(k + l, k)));
      }
    }
  }
  if (denominator(total) != 1)
    throw std::logic_error("nocorner formula: non-integral value");
  return detail::with_ratio(numerator(total), n);
}

// Exact value (or bound, for border_zero) of the family's count at n.
inline ExactValue evaluate(const FormulaId& id, int n) {
  switch (id.family) {
    case Family::row:
    case Family::col:
      return formula_row(id.k, n);
    case Family::row1:
      return formula_row1(id.k, n);
    case Family::border:
      return formula_border(n);
    case Family::border_zero:
      return detail::with_ratio(border0_bound(n), n);
    case Family::topbottom_nonadjacent:
      return formula_topbottom_nonadjacent(n);
    case Family::topbottom_adjacent:
      return formula_topbottom_adjacent(n);
    case Family::sideshade:
      return formula_sideshade(n);
    case Family::nocorner:
      return formula_nocorner(n);
  }
  throw std::logic_error("evaluate: bad family");
}

namespace detail {

// Streaming evaluation bounds for ratio_at, by loop complexity.
inline constexpr int kRatioCapLinear = 1000000;
inline constexpr int kRatioCapQuadratic = 10000;
inline constexpr int kRatioCapCubicStructure = 500;

inline double ratio_topbottom_adjacent(int n) {
  long double total = 0.0L;
  long double invfact = 0.5L;  // 1/(k-1)! at k = 3
  for (int k = 3; k <= n - 1; ++k) {
    total += static_cast<long double>(n - k) * (1.0L - invfact);
    invfact /= static_cast<long double>(k);
  }
  return static_cast<double>(total / (static_cast<long double>(n) * (n - 1)));
}

inline double ratio_topbottom_nonadjacent(int n) {
  long double total = 0.0L;
  for (int k = 2; k <= n - 2; ++k) {
    // Walk m = n-l+k-1 upward from k (l downward from n-1); the reciprocal
    // binomial obeys recip(m+1) = recip(m) (m-k+2)/(m+1).
    long double recip = 1.0L / static_cast<long double>(k);  // 1/C(k, k-1)
    for (int m = k; m <= n - 2; ++m) {
      total += 1.0L - recip;
      recip *= static_cast<long double>(m - k + 2) / static_cast<long double>(m + 1);
    }
  }
  return static_cast<double>(total / (static_cast<long double>(n) * (n - 1)));
}

inline double ratio_sideshade(int n) {
  long double s = 0.0L;
  for (int k = 2; k <= n - 2; ++k)
    s += static_cast<long double>(n - k - 1) / static_cast<long double>(k);
  const long double bracket = static_cast<long double>(n - 2) * (n - 3) / 2.0L - s;
  return static_cast<double>(bracket / (static_cast<long double>(n) * (n - 1)));
}

inline double ratio_nocorner(int n) {
  // Group the k,l double sum by s = k+l:
  //   B(s) = sum_{k=1}^{s-1} [1 - 1/C(s,k)],
  // and carry A(q,s) = C(n-s-2,q-1)/C(n-2,q-1) across s by
  //   A(q,s+1) = A(q,s) (n-s-q-1)/(n-s-2).
  std::vector<long double> b(static_cast<size_t>(n), 0.0L);
  for (int s = 2; s <= n - 2; ++s) {
    long double tot = 0.0L;
    long double recip = 1.0L / static_cast<long double>(s);  // 1/C(s,1)
    for (int k = 1; k <= s - 1; ++k) {
      tot += 1.0L - recip;
      recip *= static_cast<long double>(k + 1) / static_cast<long double>(s - k);
    }
    b[static_cast<size_t>(s)] = tot;
  }
  long double total = 0.0L;
  for (int q = 1; q <= n - 3; ++q) {
    long double a = 1.0L;  // C(n-4,q-1)/C(n-2,q-1) at s = 2
    for (int t = 0; t < q - 1; ++t)
      a *= static_cast<long double>(n - 4 - t) / static_cast<long double>(n - 2 - t);
    for (int s = 2; s <= n - q - 1; ++s) {
      total += a * b[static_cast<size_t>(s)];
      if (s + 1 <= n - q - 1)
        a *= static_cast<long double>(n - s - q - 1) / static_cast<long double>(n - s - 2);
    }
  }
  return static_cast<double>(total / (static_cast<long double>(n) * (n - 1)));
}

inline std::uint64_t small_factorial(int k) {
  if (k < 0 || k > 20) throw std::invalid_argument("factorial out of 64-bit range");
  std::uint64_t f = 1;
  for (int t = 2; t <= k; ++t) f *= static_cast<std::uint64_t>(t);
  return f;
}

}  // namespace detail

// Containment ratio of the family at one n, evaluated in floating point
// without materializing factorials. Absolute error is below 1e-9 across the
// admissible ranges (long double accumulation; the longest loop is 1e6
// terms). Range guards reflect the evaluation cost: linear families accept
// n <= 1e6, the quadratic top-bottom family n <= 1e4, nocorner n <= 500.
inline double ratio_at(const FormulaId& id, int n) {
  using detail::kRatioCapLinear;
  using detail::kRatioCapQuadratic;
  using detail::kRatioCapCubicStructure;
  auto cap = [&](int max_n, int min_n) {
    if (n < min_n)
      throw RangeError("ratio: n must be at least " + std::to_string(min_n));
    if (n > max_n)
      throw RangeError("ratio: n = " + std::to_string(n) + " exceeds evaluation cap " +
                       std::to_string(max_n));
  };
  switch (id.family) {
    case Family::row:
    case Family::col:
      if (id.k < 1) throw std::invalid_argument("ratio: k must be positive");
      cap(kRatioCapLinear, id.k);
      return 1.0 / static_cast<double>(detail::small_factorial(id.k));
    case Family::row1:
      if (id.k < 1) throw std::invalid_argument("ratio: k must be positive");
      cap(kRatioCapLinear, id.k);
      return 1.0 / (static_cast<double>(n) *
                    static_cast<double>(detail::small_factorial(id.k - 1)));
    case Family::border:
      cap(kRatioCapLinear, 4);
      return static_cast<double>(static_cast<long double>(n - 2) * (n - 3) /
                                 (4.0L * n * (n - 1)));
    case Family::border_zero:
      cap(kRatioCapLinear, 1);
      return 2.0 / static_cast<double>(n);
    case Family::topbottom_adjacent:
      cap(kRatioCapLinear, 4);
      return detail::ratio_topbottom_adjacent(n);
    case Family::topbottom_nonadjacent:
      cap(kRatioCapQuadratic, 4);
      return detail::ratio_topbottom_nonadjacent(n);
    case Family::sideshade:
      cap(kRatioCapLinear, 4);
      return detail::ratio_sideshade(n);
    case Family::nocorner:
      cap(kRatioCapCubicStructure, 4);
      return detail::ratio_nocorner(n);
  }
  throw std::logic_error("ratio_at: bad family");
}

// Limit of the containment ratio as n grows (0 for the vanishing bordered
// class, 1 for nocorner, 1/k! or 1/4 or 1/2 elsewhere).
inline double family_limit(const FormulaId& id) {
  switch (id.family) {
    case Family::row:
    case Family::col:
      return 1.0 / static_cast<double>(detail::small_factorial(id.k));
    case Family::row1:
    case Family::border_zero:
      return 0.0;
    case Family::border:
      return 0.25;
    case Family::topbottom_nonadjacent:
    case Family::topbottom_adjacent:
    case Family::sideshade:
      return 0.5;
    case Family::nocorner:
      return 1.0;
  }
  throw std::logic_error("family_limit: bad family");
}

}  // namespace meshlimit
