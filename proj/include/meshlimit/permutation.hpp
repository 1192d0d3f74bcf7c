#pragma once

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace meshlimit {

// One-line notation over {1..n}. Positions are 1-based everywhere in the
// public API so they line up with the grid-line coordinates of shaded boxes.
class Permutation {
 public:
  explicit Permutation(std::vector<int> letters) : letters_(std::move(letters)) {
    const int n = static_cast<int>(letters_.size());
    if (n == 0) throw std::invalid_argument("permutation: empty word");
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int v : letters_) {
      if (v < 1 || v > n)
        throw std::invalid_argument("permutation: letter " + std::to_string(v) +
                                    " outside 1.." + std::to_string(n));
      if (seen[static_cast<size_t>(v)]++)
        throw std::invalid_argument("permutation: repeated letter " + std::to_string(v));
    }
  }

  static Permutation identity(int n) {
    std::vector<int> w(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) w[static_cast<size_t>(t)] = t + 1;
    return Permutation(std::move(w));
  }

  static Permutation decreasing(int n) {
    std::vector<int> w(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) w[static_cast<size_t>(t)] = n - t;
    return Permutation(std::move(w));
  }

  int size() const { return static_cast<int>(letters_.size()); }

  // Value at 1-based position.
  int at(int pos) const {
    if (pos < 1 || pos > size())
      throw std::out_of_range("permutation: position " + std::to_string(pos));
    return letters_[static_cast<size_t>(pos - 1)];
  }

  const std::vector<int>& letters() const { return letters_; }

  Permutation reverse() const {
    std::vector<int> w(letters_.rbegin(), letters_.rend());
    return Permutation(std::move(w));
  }

  Permutation complement() const {
    const int n = size();
    std::vector<int> w(letters_);
    for (int& v : w) v = n + 1 - v;
    return Permutation(std::move(w));
  }

  Permutation inverse() const {
    const int n = size();
    std::vector<int> w(static_cast<size_t>(n));
    for (int pos = 1; pos <= n; ++pos)
      w[static_cast<size_t>(letters_[static_cast<size_t>(pos - 1)] - 1)] = pos;
    return Permutation(std::move(w));
  }

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> letters_;
};

}  // namespace meshlimit
