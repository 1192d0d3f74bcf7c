#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "meshlimit/exact.hpp"
#include "meshlimit/occurrence.hpp"
#include "meshlimit/pattern.hpp"
#include "meshlimit/permutation.hpp"

namespace meshlimit {

// Exhaustive scans walk all n! hosts; the cap keeps accidental n=30 calls
// from running past the heat death of the universe. Override deliberately.
inline constexpr int kDefaultCap = 12;

struct CountOptions {
  int cap = kDefaultCap;
  unsigned threads = 1;
};

// One slice of S_n: the hosts whose length-prefix_depth prefix has
// lexicographic rank congruent to shard_index modulo shard_total. The
// shards of a fixed (prefix_depth, shard_total) partition S_n, so shard
// subtotals sum to the full count no matter how they are scheduled.
struct ShardSpec {
  int n;
  int prefix_depth;
  int shard_index;
  int shard_total;
};

namespace detail {

inline void validate_shard(const ShardSpec& s) {
  if (s.n < 1) throw std::invalid_argument("shard: n must be positive");
  if (s.prefix_depth < 0 || s.prefix_depth > s.n)
    throw std::invalid_argument("shard: prefix_depth outside 0..n");
  if (s.shard_total < 1) throw std::invalid_argument("shard: shard_total must be positive");
  if (s.shard_index < 0 || s.shard_index >= s.shard_total)
    throw std::invalid_argument("shard: shard_index " + std::to_string(s.shard_index) +
                                " outside 0.." + std::to_string(s.shard_total - 1));
}

// Walks prefixes of the given depth in lexicographic order; for prefixes in
// the selected residue class, scans all completions (suffix in lexicographic
// order via next_permutation) and counts hosts containing the pattern.
class ShardCounter {
 public:
  ShardCounter(const MeshPattern& p, const ShardSpec& spec)
      : spec_(spec), tester_(p), word_(static_cast<size_t>(spec.n)),
        used_(static_cast<size_t>(spec.n) + 1, 0) {}

  Int run() {
    count_ = 0;
    rank_ = 0;
    choose(0);
    return count_;
  }

 private:
  void choose(int depth) {
    if (depth == spec_.prefix_depth) {
      if (rank_++ % static_cast<std::uint64_t>(spec_.shard_total) ==
          static_cast<std::uint64_t>(spec_.shard_index))
        scan_completions(depth);
      return;
    }
    for (int v = 1; v <= spec_.n; ++v) {
      if (used_[static_cast<size_t>(v)]) continue;
      used_[static_cast<size_t>(v)] = 1;
      word_[static_cast<size_t>(depth)] = v;
      choose(depth + 1);
      used_[static_cast<size_t>(v)] = 0;
    }
  }

  void scan_completions(int depth) {
    auto suffix = word_.begin() + depth;
    int fill = depth;
    for (int v = 1; v <= spec_.n; ++v)
      if (!used_[static_cast<size_t>(v)]) word_[static_cast<size_t>(fill++)] = v;
    std::uint64_t local = 0;
    do {
      if (tester_.contains(word_)) ++local;
    } while (std::next_permutation(suffix, word_.end()));
    count_ += local;
  }

  ShardSpec spec_;
  ContainmentTester tester_;
  std::vector<int> word_;
  std::vector<char> used_;
  std::uint64_t rank_ = 0;
  Int count_ = 0;
};

}  // namespace detail

// Number of hosts in the shard's slice of S_n containing p. Deterministic;
// the sum over shard_index = 0..shard_total-1 equals the full count.
inline Int count_shard(const MeshPattern& p, const ShardSpec& spec,
                       const CountOptions& opts = {}) {
  detail::validate_shard(spec);
  if (spec.n > opts.cap)
    throw RangeError("count: n = " + std::to_string(spec.n) + " exceeds cap " +
                     std::to_string(opts.cap));
  detail::ShardCounter counter(p, spec);
  return counter.run();
}

// |{sigma in S_n : sigma contains p}|, exact. Parallel runs shard the
// search by permutation prefix and add subtotals in shard order, so the
// result is identical for every thread count.
inline Int count_containing(const MeshPattern& p, int n, const CountOptions& opts = {}) {
  if (n < 1) throw RangeError("count: n must be positive");
  if (n > opts.cap)
    throw RangeError("count: n = " + std::to_string(n) + " exceeds cap " +
                     std::to_string(opts.cap));
  const unsigned threads = std::max(1u, opts.threads);
  const int depth = n <= 7 ? (n >= 2 ? 1 : 0) : 2;
  int shard_total = 1;
  for (int t = 0; t < depth; ++t) shard_total *= n - t;
  if (threads == 1 || shard_total == 1) {
    ShardSpec all{n, 0, 0, 1};
    detail::ShardCounter counter(p, all);
    return counter.run();
  }
  std::vector<Int> partial(static_cast<size_t>(shard_total));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int s = next.fetch_add(1);
      if (s >= shard_total) return;
      detail::ShardCounter counter(p, ShardSpec{n, depth, s, shard_total});
      partial[static_cast<size_t>(s)] = counter.run();
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawn = std::min(threads, static_cast<unsigned>(shard_total));
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  Int total = 0;
  for (const Int& part : partial) total += part;
  return total;
}

struct CountRow {
  int n;
  Int count;
  Int total;  // n!
  Rat ratio;  // count / n!
};

struct CountSeries {
  MeshPattern pattern;
  std::vector<CountRow> rows;
};

inline CountSeries count_series(const MeshPattern& p, int n_min, int n_max,
                                const CountOptions& opts = {}) {
  if (n_min < 1 || n_min > n_max)
    throw RangeError("count series: need 1 <= n_min <= n_max");
  CountSeries series{p, {}};
  series.rows.reserve(static_cast<size_t>(n_max - n_min) + 1);
  for (int n = n_min; n <= n_max; ++n) {
    Int c = count_containing(p, n, opts);
    Int total = factorial(n);
    series.rows.push_back({n, c, total, Rat(c, total)});
  }
  return series;
}

struct EqualityReport {
  bool equal;
  int diverged_n;  // smallest n with differing counts; 0 when equal
  Int count1;
  Int count2;
};

// Compares containment counts of two patterns for every n up to max_n and
// reports the first divergence.
inline EqualityReport equal_containment(const MeshPattern& a, const MeshPattern& b,
                                        int max_n, const CountOptions& opts = {}) {
  for (int n = 1; n <= max_n; ++n) {
    Int ca = count_containing(a, n, opts);
    Int cb = count_containing(b, n, opts);
    if (ca != cb) return {false, n, std::move(ca), std::move(cb)};
  }
  return {true, 0, 0, 0};
}

}  // namespace meshlimit
