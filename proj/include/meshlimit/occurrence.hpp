#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshlimit/pattern.hpp"
#include "meshlimit/permutation.hpp"

namespace meshlimit {

// A candidate occurrence: k strictly increasing 1-based positions into a
// host of length n, together with the boundary maps alpha (positions) and
// beta (sorted selected values), both with sentinels at indices 0 and k+1.
class OccurrenceWitness {
 public:
  OccurrenceWitness(const Permutation& host, std::vector<int> positions)
      : positions_(std::move(positions)) {
    const int n = host.size();
    const int k = static_cast<int>(positions_.size());
    int prev = 0;
    for (int p : positions_) {
      if (p < 1 || p > n)
        throw std::invalid_argument("witness: position " + std::to_string(p) +
                                    " outside host 1.." + std::to_string(n));
      if (p <= prev)
        throw std::invalid_argument("witness: positions must strictly increase");
      prev = p;
    }
    alpha_.reserve(static_cast<size_t>(k) + 2);
    alpha_.push_back(0);
    alpha_.insert(alpha_.end(), positions_.begin(), positions_.end());
    alpha_.push_back(n + 1);
    beta_.reserve(static_cast<size_t>(k) + 2);
    beta_.push_back(0);
    for (int p : positions_) beta_.push_back(host.at(p));
    std::sort(beta_.begin() + 1, beta_.end());
    beta_.push_back(n + 1);
  }

  int size() const { return static_cast<int>(positions_.size()); }
  int host_size() const { return alpha_.back() - 1; }
  const std::vector<int>& positions() const { return positions_; }

  // Boundary maps, defined for 0 <= index <= size()+1.
  int alpha(int i) const { return alpha_.at(static_cast<size_t>(i)); }
  int beta(int j) const { return beta_.at(static_cast<size_t>(j)); }

 private:
  std::vector<int> positions_;
  std::vector<int> alpha_;
  std::vector<int> beta_;
};

// True iff the selected letters are order-isomorphic to the pattern word and
// no non-selected host point lies strictly inside a shaded box: a point at
// (pos, val) with alpha(i) < pos < alpha(i+1) and beta(j) < val < beta(j+1)
// kills the witness when box (i, j) is shaded. Points of the witness itself
// sit on box boundaries and never violate anything.
inline bool is_occurrence(const MeshPattern& p, const Permutation& sigma,
                          const OccurrenceWitness& eta) {
  const int k = p.length();
  const int n = sigma.size();
  if (eta.size() != k)
    throw std::invalid_argument("is_occurrence: witness size " +
                                std::to_string(eta.size()) + " != pattern length " +
                                std::to_string(k));
  if (eta.host_size() != n)
    throw std::invalid_argument("is_occurrence: witness built for a different host size");

  const auto& pi = p.perm().letters();
  std::vector<int> sel(static_cast<size_t>(k));
  for (int t = 0; t < k; ++t)
    sel[static_cast<size_t>(t)] = sigma.at(eta.positions()[static_cast<size_t>(t)]);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if ((sel[static_cast<size_t>(a)] < sel[static_cast<size_t>(b)]) !=
          (pi[static_cast<size_t>(a)] < pi[static_cast<size_t>(b)]))
        return false;

  if (p.shading().empty()) return true;
  int i = 0;  // alpha interval of the current position
  for (int pos = 1; pos <= n; ++pos) {
    if (eta.alpha(i + 1) == pos) {
      ++i;  // witness point, on the boundary
      continue;
    }
    const int val = sigma.at(pos);
    int j = 0;
    while (eta.beta(j + 1) < val) ++j;
    if (p.shaded(i, j)) return false;
  }
  return true;
}

// Reusable matcher for one pattern against many hosts. Not thread-safe:
// give each worker its own instance (construction is cheap).
class ContainmentTester {
 public:
  explicit ContainmentTester(const MeshPattern& p)
      : k_(p.length()), shading_empty_(p.shading().empty()) {
    const auto& pi = p.perm().letters();
    greater_.assign(static_cast<size_t>(k_) * static_cast<size_t>(k_), 0);
    for (int m = 0; m < k_; ++m)
      for (int t = 0; t < k_; ++t)
        greater_[idx(m, t)] = pi[static_cast<size_t>(m)] > pi[static_cast<size_t>(t)];
    slot_of_rank_.assign(static_cast<size_t>(k_) + 1, 0);
    for (int t = 0; t < k_; ++t) slot_of_rank_[static_cast<size_t>(pi[static_cast<size_t>(t)])] = t;
    grid_.assign(static_cast<size_t>(k_ + 1) * static_cast<size_t>(k_ + 1), 0);
    for (const Box& b : p.shading().boxes())
      grid_[static_cast<size_t>(b.x) * static_cast<size_t>(k_ + 1) + static_cast<size_t>(b.y)] = 1;
    pos_.assign(static_cast<size_t>(k_), 0);
    val_.assign(static_cast<size_t>(k_), 0);
    beta_.assign(static_cast<size_t>(k_) + 2, 0);
  }

  // First-witness search over increasing position choices with incremental
  // order-isomorphism pruning.
  bool contains(const std::vector<int>& sigma) {
    bool found = false;
    scan(sigma, 0, 1, [&] {
      found = true;
      return false;  // stop at the first witness
    });
    return found;
  }

  std::uint64_t count_witnesses(const std::vector<int>& sigma) {
    std::uint64_t count = 0;
    scan(sigma, 0, 1, [&] {
      ++count;
      return true;
    });
    return count;
  }

  // Calls fn with the current 1-based witness positions for every
  // occurrence, in lexicographic order; fn returns false to stop early.
  template <typename Fn>
  void for_each_witness(const std::vector<int>& sigma, Fn&& fn) {
    scan(sigma, 0, 1, [&] { return fn(static_cast<const std::vector<int>&>(pos_)); });
  }

 private:
  size_t idx(int m, int t) const {
    return static_cast<size_t>(m) * static_cast<size_t>(k_) + static_cast<size_t>(t);
  }

  // Depth-first choice of positions for pattern slots m.. ; on_witness
  // returns false to abort the whole scan.
  template <typename Fn>
  bool scan(const std::vector<int>& sigma, int m, int start, Fn&& on_witness) {
    const int n = static_cast<int>(sigma.size());
    if (m == 0 && k_ > n) return true;
    if (m == k_) return !interior_clear(sigma) || on_witness();
    for (int pos = start; pos <= n - (k_ - m) + 1; ++pos) {
      const int v = sigma[static_cast<size_t>(pos - 1)];
      bool iso = true;
      for (int t = 0; t < m; ++t) {
        if ((v > val_[static_cast<size_t>(t)]) != static_cast<bool>(greater_[idx(m, t)])) {
          iso = false;
          break;
        }
      }
      if (!iso) continue;
      pos_[static_cast<size_t>(m)] = pos;
      val_[static_cast<size_t>(m)] = v;
      if (!scan(sigma, m + 1, pos + 1, on_witness)) return false;
    }
    return true;
  }

  // Shading check for the completed candidate in pos_/val_.
  bool interior_clear(const std::vector<int>& sigma) {
    if (shading_empty_) return true;
    const int n = static_cast<int>(sigma.size());
    // beta_[r] = r-th smallest selected value = value in the slot where the
    // pattern word holds letter r.
    for (int r = 1; r <= k_; ++r)
      beta_[static_cast<size_t>(r)] = val_[static_cast<size_t>(slot_of_rank_[static_cast<size_t>(r)])];
    beta_[0] = 0;
    beta_[static_cast<size_t>(k_) + 1] = n + 1;
    int i = 0;
    for (int pos = 1; pos <= n; ++pos) {
      if (i < k_ && pos_[static_cast<size_t>(i)] == pos) {
        ++i;
        continue;
      }
      const int v = sigma[static_cast<size_t>(pos - 1)];
      int j = 0;
      while (beta_[static_cast<size_t>(j + 1)] < v) ++j;
      if (grid_[static_cast<size_t>(i) * static_cast<size_t>(k_ + 1) + static_cast<size_t>(j)])
        return false;
    }
    return true;
  }

  int k_;
  bool shading_empty_;
  std::vector<char> greater_;      // pattern order matrix
  std::vector<int> slot_of_rank_;  // slot holding pattern letter r
  std::vector<char> grid_;         // shaded boxes, (k+1) x (k+1)
  std::vector<int> pos_;           // chosen positions, 1-based
  std::vector<int> val_;           // values at chosen positions
  std::vector<int> beta_;          // scratch boundary values
};

inline bool contains(const MeshPattern& p, const Permutation& sigma) {
  ContainmentTester tester(p);
  return tester.contains(sigma.letters());
}

// Number of witnesses, exhaustively.
inline std::uint64_t count_occurrences(const MeshPattern& p, const Permutation& sigma) {
  ContainmentTester tester(p);
  return tester.count_witnesses(sigma.letters());
}

}  // namespace meshlimit
