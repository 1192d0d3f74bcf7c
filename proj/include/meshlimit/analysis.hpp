#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "meshlimit/enumerate.hpp"
#include "meshlimit/formulas.hpp"
#include "meshlimit/occurrence.hpp"
#include "meshlimit/parse.hpp"
#include "meshlimit/pattern.hpp"

namespace meshlimit {

struct AnalysisOptions {
  int cap = kDefaultCap;
  unsigned threads = 1;
};

// One comparison of a closed form (or bound) against the exhaustive count.
struct VerificationRow {
  std::string theorem;
  std::string pattern;
  int n;
  Int formula;
  Int oracle;
  bool match;
  double millis;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;
  bool pass = true;
};

enum class BorderClass { one_quarter, zero };

inline std::string_view border_class_name(BorderClass c) {
  return c == BorderClass::one_quarter ? "one_quarter" : "zero";
}

// The four length-4 permutations whose bordered pattern keeps a positive
// containment ratio; every other choice is dominated by hosts with an
// extreme first or last letter.
inline const std::vector<Permutation>& border_quarter_perms() {
  static const std::vector<Permutation> perms = {
      Permutation({2, 1, 4, 3}), Permutation({2, 4, 1, 3}),
      Permutation({3, 1, 4, 2}), Permutation({3, 4, 1, 2})};
  return perms;
}

inline BorderClass classify_border(const Permutation& pi) {
  if (pi.size() != 4)
    throw std::invalid_argument("classify_border: permutation must have length 4");
  const auto& quarter = border_quarter_perms();
  return std::find(quarter.begin(), quarter.end(), pi) != quarter.end()
             ? BorderClass::one_quarter
             : BorderClass::zero;
}

namespace detail {

inline Permutation canonical_perm(int k) {
  return k == 4 ? presets::perm2143() : Permutation::decreasing(k);
}

// Twelve top-and-bottom patterns whose two middle letters are not adjacent
// in value, and the twelve where they are.
inline const std::vector<Permutation>& topbottom_nonadjacent_perms() {
  static const std::vector<Permutation> perms = [] {
    std::vector<Permutation> out;
    for (const char* w : {"2143", "2413", "2134", "2431", "1243", "4213", "3142",
                          "3412", "3124", "3421", "1342", "4312"})
      out.push_back(parse_perm(w));
    return out;
  }();
  return perms;
}

inline const std::vector<Permutation>& topbottom_adjacent_perms() {
  static const std::vector<Permutation> perms = [] {
    std::vector<Permutation> out;
    for (const char* w : {"2314", "2341", "1234", "4231", "1423", "4123", "3214",
                          "3241", "1324", "4321", "1432", "4132"})
      out.push_back(parse_perm(w));
    return out;
  }();
  return perms;
}

inline CountOptions to_count_options(const AnalysisOptions& opts) {
  return CountOptions{opts.cap, opts.threads};
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

// Appends one formula-vs-oracle row.
inline void push_check(VerificationReport& report, std::string theorem,
                       const MeshPattern& pattern, int n, Int expected,
                       const CountOptions& copts, bool bound_only = false) {
  const auto start = std::chrono::steady_clock::now();
  Int oracle = count_containing(pattern, n, copts);
  const double ms = elapsed_ms(start);
  const bool ok = bound_only ? oracle <= expected : oracle == expected;
  report.pass = report.pass && ok;
  report.rows.push_back({std::move(theorem), format_pattern(pattern), n,
                         std::move(expected), std::move(oracle), ok, ms});
}

// Scan of S_6 for the vanishing bordered class: every containing host must
// begin or end with an extreme letter (1 or n). The proof of the factorial
// bound rests on exactly this property.
inline bool endpoint_property_holds(const MeshPattern& p, int n) {
  ContainmentTester tester(p);
  std::vector<int> word(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) word[static_cast<size_t>(t)] = t + 1;
  do {
    if (!tester.contains(word)) continue;
    const int first = word.front();
    const int last = word.back();
    if (first != 1 && first != n && last != 1 && last != n) return false;
  } while (std::next_permutation(word.begin(), word.end()));
  return true;
}

}  // namespace detail

// Checks a family's closed form (or bound) against exhaustive counts for
// every admissible n <= max_n.
//
// row/col/row1 need a concrete pattern: perm_override, or 2143 for k = 4 and
// the decreasing word otherwise. Unset i (row) verifies every free-row
// index; row1 defaults to i = j = k/2. border runs its four permutations,
// the top-bottom families their twelve each. border_zero checks the 2(n-1)!
// bound for the twenty vanishing permutations and, at n = 6, the
// extreme-endpoint property the bound's proof needs. sideshade additionally
// requires its two displayed forms to agree exactly.
inline VerificationReport verify_theorem(
    const FormulaId& id, int max_n, const AnalysisOptions& opts = {},
    const std::optional<Permutation>& perm_override = std::nullopt) {
  VerificationReport report;
  const CountOptions copts = detail::to_count_options(opts);
  const std::string name(family_name(id.family));

  switch (id.family) {
    case Family::row:
    case Family::col: {
      if (id.k < 1) throw std::invalid_argument("verify: k must be positive");
      const Permutation pi = perm_override ? *perm_override : detail::canonical_perm(id.k);
      if (pi.size() != id.k)
        throw std::invalid_argument("verify: permutation length differs from k");
      std::vector<int> indices;
      const int fixed = id.family == Family::row ? id.i : id.j;
      if (fixed >= 0) indices.push_back(fixed);
      else
        for (int t = 0; t <= id.k; ++t) indices.push_back(t);
      for (int idx : indices) {
        const MeshPattern p = id.family == Family::row ? presets::row(pi, idx)
                                                       : presets::col(pi, idx);
        for (int n = id.k; n <= max_n; ++n)
          detail::push_check(report, name, p, n, formula_row(id.k, n).value, copts);
      }
      break;
    }
    case Family::row1: {
      if (id.k < 1) throw std::invalid_argument("verify: k must be positive");
      const Permutation pi = perm_override ? *perm_override : detail::canonical_perm(id.k);
      if (pi.size() != id.k)
        throw std::invalid_argument("verify: permutation length differs from k");
      const int i = id.i >= 0 ? id.i : id.k / 2;
      const int j = id.j >= 0 ? id.j : id.k / 2;
      const MeshPattern p = presets::row1(pi, i, j);
      for (int n = id.k; n <= max_n; ++n)
        detail::push_check(report, name, p, n, formula_row1(id.k, n).value, copts);
      break;
    }
    case Family::border: {
      for (const Permutation& pi : border_quarter_perms()) {
        const MeshPattern p = presets::border(pi);
        for (int n = 4; n <= max_n; ++n)
          detail::push_check(report, name, p, n, formula_border(n).value, copts);
      }
      break;
    }
    case Family::border_zero: {
      std::vector<int> word{1, 2, 3, 4};
      std::vector<Permutation> perms;
      do {
        Permutation pi(word);
        if (classify_border(pi) == BorderClass::zero) perms.push_back(std::move(pi));
      } while (std::next_permutation(word.begin(), word.end()));
      for (const Permutation& pi : perms) {
        const MeshPattern p = presets::border(pi);
        for (int n = 4; n <= max_n; ++n) {
          detail::push_check(report, name, p, n, border0_bound(n), copts,
                             /*bound_only=*/true);
          if (n == 6 && !detail::endpoint_property_holds(p, n)) {
            report.pass = false;
            report.rows.back().match = false;
          }
        }
      }
      break;
    }
    case Family::topbottom_nonadjacent:
    case Family::topbottom_adjacent: {
      const auto& perms = id.family == Family::topbottom_nonadjacent
                              ? detail::topbottom_nonadjacent_perms()
                              : detail::topbottom_adjacent_perms();
      for (const Permutation& pi : perms) {
        const MeshPattern p = presets::topbottom(pi);
        for (int n = 4; n <= max_n; ++n)
          detail::push_check(report, name, p, n, evaluate(id, n).value, copts);
      }
      break;
    }
    case Family::sideshade: {
      const MeshPattern p = presets::sideshade();
      for (int n = 4; n <= max_n; ++n) {
        const Int simplified = formula_sideshade(n).value;
        const Int triple = formula_sideshade_triple_sum(n).value;
        detail::push_check(report, name, p, n, simplified, copts);
        if (simplified != triple) {
          report.pass = false;
          report.rows.back().match = false;
        }
      }
      break;
    }
    case Family::nocorner: {
      const MeshPattern p = presets::nocorner();
      for (int n = 4; n <= max_n; ++n)
        detail::push_check(report, name, p, n, formula_nocorner(n).value, copts);
      break;
    }
  }
  return report;
}

namespace detail {

// Extra shaded boxes hugging the pattern's left and right edges. Every one
// of the 81 left/right combinations keeps the top-bottom counts; over the
// corner-free base the column-4 additions can lose hosts, so those variants
// are checked as bounds instead (see run_shading_fixtures).
inline const std::vector<std::vector<Box>>& left_augmentations() {
  static const std::vector<std::vector<Box>> sets = {
      {},
      {{0, 1}},
      {{0, 2}},
      {{1, 1}},
      {{1, 2}},
      {{1, 1}, {1, 2}},
      {{0, 1}, {1, 1}},
      {{0, 2}, {1, 2}},
      {{0, 1}, {0, 2}}};
  return sets;
}

inline const std::vector<std::vector<Box>>& right_augmentations() {
  static const std::vector<std::vector<Box>> sets = {
      {},
      {{4, 2}},
      {{4, 3}},
      {{3, 3}},
      {{3, 2}},
      {{3, 2}, {3, 3}},
      {{3, 3}, {4, 3}},
      {{3, 2}, {4, 2}},
      {{4, 2}, {4, 3}}};
  return sets;
}

// Representative sub-shadings of the corner-free pattern for the
// monotonicity direction: fewer boxes can only gain containing hosts.
inline const std::vector<std::vector<Box>>& nocorner_subsets() {
  static const std::vector<std::vector<Box>> sets = {
      {},
      {{0, 0}},
      {{0, 0}, {4, 4}},
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{0, 4}, {1, 4}, {2, 4}, {3, 4}, {4, 4}}};
  return sets;
}

}  // namespace detail

// Runs the shading-robustness fixture families:
//  (a) the 81 left/right augmentations of the top-bottom 2143 pattern all
//      keep the base counts,
//  (b) every dihedral image of the side-shaded pattern matches its closed
//      form,
//  (c) the 81 analogous augmentations of the corner-free pattern, asserted
//      as count equalities while the right-side boxes stay inside column 3
//      and as supershading upper bounds once column 4 is touched. Equality
//      genuinely fails there: with box (4,2) added, host 326514 loses its
//      only witness, so the count drops below the base from n = 6 on. And
//  (d) representative sub-shadings of the corner-free pattern count at
//      least as many hosts (monotonicity; the formula column carries the
//      lower bound).
inline VerificationReport run_shading_fixtures(int max_n, const AnalysisOptions& opts = {}) {
  VerificationReport report;
  const CountOptions copts = detail::to_count_options(opts);
  const int lo = 4;
  if (max_n < lo) return report;

  const MeshPattern tb_base = presets::topbottom(presets::perm2143());
  const MeshPattern nc_base = presets::nocorner();
  for (int n = lo; n <= max_n; ++n) {
    const Int tb_count = count_containing(tb_base, n, copts);
    const Int nc_count = count_containing(nc_base, n, copts);
    for (const auto& left : detail::left_augmentations()) {
      for (const auto& right : detail::right_augmentations()) {
        std::vector<Box> extra(left);
        extra.insert(extra.end(), right.begin(), right.end());
        const ShadingSet add{extra};
        const MeshPattern tb_variant(tb_base.perm(), tb_base.shading().united(add));
        const MeshPattern nc_variant(nc_base.perm(), nc_base.shading().united(add));
        detail::push_check(report, "topbottom_variants", tb_variant, n, tb_count, copts);
        const bool column4 = std::any_of(right.begin(), right.end(),
                                         [](const Box& b) { return b.x == 4; });
        if (column4)
          detail::push_check(report, "nocorner_bounded_variants", nc_variant, n,
                             nc_count, copts, true);
        else
          detail::push_check(report, "nocorner_variants", nc_variant, n, nc_count,
                             copts);
      }
    }
    for (const MeshPattern& image : presets::sideshade().orbit())
      detail::push_check(report, "sideshade_orbit", image, n,
                         formula_sideshade(n).value, copts);
    for (const auto& subset : detail::nocorner_subsets()) {
      const MeshPattern sparse(nc_base.perm(), ShadingSet(subset));
      const auto start = std::chrono::steady_clock::now();
      Int oracle = count_containing(sparse, n, copts);
      const double ms = detail::elapsed_ms(start);
      const bool ok = oracle >= nc_count;
      report.pass = report.pass && ok;
      report.rows.push_back({"nocorner_subsets", format_pattern(sparse), n, nc_count,
                             std::move(oracle), ok, ms});
    }
  }
  return report;
}

enum class Conjecture { topbottom_general, skewsum_half };

inline std::string_view conjecture_name(Conjecture c) {
  return c == Conjecture::topbottom_general ? "topbottom_general" : "skewsum_half";
}

inline Conjecture conjecture_from_name(std::string_view name) {
  if (name == "topbottom_general") return Conjecture::topbottom_general;
  if (name == "skewsum_half") return Conjecture::skewsum_half;
  throw std::invalid_argument("unknown conjecture '" + std::string(name) + "'");
}

struct ProbeRow {
  int n;
  Int count;
  Int total;
  Rat ratio;
};

// Numeric evidence for an open limit statement: exact ratios for every
// feasible n, plus trend digests. sandwich_ok is the skew-sum pin: each
// ratio must lie between the side-shaded closed form's ratio and 1.
struct ProbeReport {
  std::string conjecture;
  std::string pattern;
  double limit;
  std::vector<ProbeRow> rows;
  double last_ratio = 0.0;
  double last_delta = 0.0;   // limit - last_ratio
  bool monotone = true;      // ratios nondecreasing over the probed range
  std::string approaching;   // "below", "above", or "mixed"
  bool sandwich_ok = true;
};

// The side-shaded pattern minus its bottom-right box: conjectured to share
// the 1/2 limit.
inline MeshPattern skewsum_pattern() {
  const MeshPattern side = presets::sideshade();
  return MeshPattern(side.perm(), side.shading().minus(ShadingSet({{4, 0}})));
}

inline ProbeReport probe_conjecture(Conjecture conjecture,
                                    const std::optional<Permutation>& pi, int max_n,
                                    const AnalysisOptions& opts = {}) {
  const CountOptions copts = detail::to_count_options(opts);
  ProbeReport report;
  report.conjecture = std::string(conjecture_name(conjecture));
  report.limit = 0.5;

  MeshPattern pattern = skewsum_pattern();
  if (conjecture == Conjecture::topbottom_general) {
    const Permutation probe_pi = pi ? *pi : Permutation({2, 1, 3});
    if (probe_pi.size() != 3 && probe_pi.size() != 5)
      throw std::invalid_argument(
          "probe: the general top-bottom probe takes a pattern of length 3 or 5 "
          "(length 4 is settled)");
    pattern = presets::topbottom(probe_pi);
  } else if (pi) {
    throw std::invalid_argument("probe: skewsum_half has a fixed pattern");
  }
  report.pattern = format_pattern(pattern);

  const int lo = pattern.length();
  for (int n = lo; n <= max_n; ++n) {
    Int c = count_containing(pattern, n, copts);
    Int total = factorial(n);
    Rat ratio(c, total);
    if (conjecture == Conjecture::skewsum_half) {
      const Rat lower = formula_sideshade(n).ratio;
      if (n >= 4 && !(lower <= ratio && ratio <= 1)) report.sandwich_ok = false;
    }
    report.rows.push_back({n, std::move(c), std::move(total), std::move(ratio)});
  }

  const Rat half(1, 2);
  bool any_below = false;
  bool any_above = false;
  for (size_t t = 0; t < report.rows.size(); ++t) {
    const Rat& r = report.rows[t].ratio;
    if (r < half) any_below = true;
    if (r > half) any_above = true;
    if (t > 0 && r < report.rows[t - 1].ratio) report.monotone = false;
  }
  report.approaching = any_below && any_above ? "mixed" : (any_above ? "above" : "below");
  if (!report.rows.empty()) {
    report.last_ratio = report.rows.back().ratio.convert_to<double>();
    report.last_delta = report.limit - report.last_ratio;
  }
  return report;
}

// Deterministic text renderings. Columns are fixed; floats use 12
// significant digits. Every non-timing column is byte-stable across runs.
namespace detail {

inline std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_millis(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace detail

inline std::string to_csv(const VerificationReport& report) {
  std::string out = "theorem,pattern,n,formula,oracle,match,millis\n";
  for (const VerificationRow& row : report.rows) {
    out += detail::csv_escape(row.theorem);
    out.push_back(',');
    out += detail::csv_escape(row.pattern);
    out.push_back(',');
    out += std::to_string(row.n);
    out.push_back(',');
    out += row.formula.str();
    out.push_back(',');
    out += row.oracle.str();
    out.push_back(',');
    out += row.match ? "true" : "false";
    out.push_back(',');
    out += detail::format_millis(row.millis);
    out.push_back('\n');
  }
  return out;
}

inline nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const VerificationRow& row : report.rows) {
    rows.push_back({{"theorem", row.theorem},
                    {"pattern", row.pattern},
                    {"n", row.n},
                    {"formula", row.formula.str()},
                    {"oracle", row.oracle.str()},
                    {"match", row.match},
                    {"millis", row.millis}});
  }
  return nlohmann::ordered_json{{"rows", std::move(rows)}, {"pass", report.pass}};
}

inline std::string to_csv(const ProbeReport& report) {
  std::string out = "conjecture,pattern,n,count,total,ratio\n";
  for (const ProbeRow& row : report.rows) {
    out += detail::csv_escape(report.conjecture);
    out.push_back(',');
    out += detail::csv_escape(report.pattern);
    out.push_back(',');
    out += std::to_string(row.n);
    out.push_back(',');
    out += row.count.str();
    out.push_back(',');
    out += row.total.str();
    out.push_back(',');
    out += detail::format_sig(row.ratio.convert_to<double>());
    out.push_back('\n');
  }
  return out;
}

inline nlohmann::ordered_json to_json(const ProbeReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ProbeRow& row : report.rows) {
    rows.push_back({{"n", row.n},
                    {"count", row.count.str()},
                    {"total", row.total.str()},
                    {"ratio", static_cast<std::string>(row.ratio.str())},
                    {"ratio_float", detail::format_sig(row.ratio.convert_to<double>())}});
  }
  return nlohmann::ordered_json{
      {"conjecture", report.conjecture},
      {"pattern", report.pattern},
      {"limit", detail::format_sig(report.limit)},
      {"rows", std::move(rows)},
      {"summary",
       {{"last_ratio", detail::format_sig(report.last_ratio)},
        {"last_delta", detail::format_sig(report.last_delta)},
        {"monotone", report.monotone},
        {"approaching", report.approaching},
        {"sandwich_ok", report.sandwich_ok}}}};
}

}  // namespace meshlimit
