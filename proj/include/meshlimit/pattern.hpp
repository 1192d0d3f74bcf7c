#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "meshlimit/permutation.hpp"

namespace meshlimit {

// A shaded unit box named by its southwest corner. For a pattern of length k
// the grid corners range over 0..k in both coordinates; x counts position
// gaps, y counts value gaps.
struct Box {
  int x;
  int y;
  auto operator<=>(const Box&) const = default;
};

// Sorted duplicate-free set of boxes. Grid bounds are enforced by the
// owning MeshPattern, which knows the pattern length.
class ShadingSet {
 public:
  ShadingSet() = default;

  explicit ShadingSet(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
    for (const Box& b : boxes_)
      if (b.x < 0 || b.y < 0)
        throw std::invalid_argument("shading: negative box coordinate");
    std::sort(boxes_.begin(), boxes_.end());
    boxes_.erase(std::unique(boxes_.begin(), boxes_.end()), boxes_.end());
  }

  static ShadingSet full(int k) {
    std::vector<Box> b;
    b.reserve(static_cast<size_t>(k + 1) * static_cast<size_t>(k + 1));
    for (int x = 0; x <= k; ++x)
      for (int y = 0; y <= k; ++y) b.push_back({x, y});
    return ShadingSet(std::move(b));
  }

  bool contains(int x, int y) const {
    return std::binary_search(boxes_.begin(), boxes_.end(), Box{x, y});
  }

  bool empty() const { return boxes_.empty(); }
  int size() const { return static_cast<int>(boxes_.size()); }
  const std::vector<Box>& boxes() const { return boxes_; }

  int max_coord() const {
    int m = 0;
    for (const Box& b : boxes_) m = std::max({m, b.x, b.y});
    return m;
  }

  bool is_subset_of(const ShadingSet& other) const {
    return std::includes(other.boxes_.begin(), other.boxes_.end(),
                         boxes_.begin(), boxes_.end());
  }

  ShadingSet united(const ShadingSet& other) const {
    std::vector<Box> b(boxes_);
    b.insert(b.end(), other.boxes_.begin(), other.boxes_.end());
    return ShadingSet(std::move(b));
  }

  ShadingSet minus(const ShadingSet& other) const {
    std::vector<Box> b;
    std::set_difference(boxes_.begin(), boxes_.end(), other.boxes_.begin(),
                        other.boxes_.end(), std::back_inserter(b));
    return ShadingSet(std::move(b));
  }

  auto operator<=>(const ShadingSet&) const = default;

 private:
  std::vector<Box> boxes_;
};

// Pattern permutation plus shaded boxes.
class MeshPattern {
 public:
  MeshPattern(Permutation perm, ShadingSet shading)
      : perm_(std::move(perm)), shading_(std::move(shading)) {
    if (shading_.max_coord() > perm_.size())
      throw std::invalid_argument("mesh pattern: box coordinate exceeds grid size " +
                                  std::to_string(perm_.size()));
  }

  const Permutation& perm() const { return perm_; }
  const ShadingSet& shading() const { return shading_; }
  int length() const { return perm_.size(); }
  bool shaded(int x, int y) const { return shading_.contains(x, y); }

  // Quarter turn clockwise: point (i, v) moves to (v, k+1-i), box (x, y)
  // to (y, k-x).
  MeshPattern rotate90() const {
    return MeshPattern(perm_.inverse().complement(), map_boxes([this](Box b) {
                         return Box{b.y, perm_.size() - b.x};
                       }));
  }

  MeshPattern reverse() const {
    return MeshPattern(perm_.reverse(), map_boxes([this](Box b) {
                         return Box{perm_.size() - b.x, b.y};
                       }));
  }

  MeshPattern complement() const {
    return MeshPattern(perm_.complement(), map_boxes([this](Box b) {
                         return Box{b.x, perm_.size() - b.y};
                       }));
  }

  MeshPattern inverse() const {
    return MeshPattern(perm_.inverse(),
                       map_boxes([](Box b) { return Box{b.y, b.x}; }));
  }

  // All distinct images under the dihedral symmetries of the square, in the
  // fixed order id, r, r^2, r^3, then the reflections reverse * r^t. At most
  // eight members; duplicates keep their first slot.
  std::vector<MeshPattern> orbit() const {
    std::vector<MeshPattern> out;
    MeshPattern cur = *this;
    for (int half = 0; half < 2; ++half) {
      for (int t = 0; t < 4; ++t) {
        if (std::find(out.begin(), out.end(), cur) == out.end()) out.push_back(cur);
        cur = cur.rotate90();
      }
      cur = cur.reverse();
    }
    return out;
  }

  auto operator<=>(const MeshPattern&) const = default;

 private:
  template <typename Fn>
  ShadingSet map_boxes(Fn&& fn) const {
    std::vector<Box> b;
    b.reserve(shading_.boxes().size());
    for (const Box& box : shading_.boxes()) b.push_back(fn(box));
    return ShadingSet(std::move(b));
  }

  Permutation perm_;
  ShadingSet shading_;
};

// True when the patterns share a permutation and p1's shading is contained
// in p2's. Every occurrence of p2 is then an occurrence of p1.
inline bool is_subshading(const MeshPattern& p1, const MeshPattern& p2) {
  if (p1.perm() != p2.perm())
    throw std::invalid_argument("is_subshading: patterns differ in permutation");
  return p1.shading().is_subset_of(p2.shading());
}

namespace presets {

// Full rows except row i.
inline MeshPattern row(const Permutation& pi, int i) {
  const int k = pi.size();
  if (i < 0 || i > k) throw std::invalid_argument("row preset: index out of range");
  std::vector<Box> b;
  for (int x = 0; x <= k; ++x)
    for (int y = 0; y <= k; ++y)
      if (y != i) b.push_back({x, y});
  return MeshPattern(pi, ShadingSet(std::move(b)));
}

// Full columns except column j.
inline MeshPattern col(const Permutation& pi, int j) {
  const int k = pi.size();
  if (j < 0 || j > k) throw std::invalid_argument("col preset: index out of range");
  std::vector<Box> b;
  for (int x = 0; x <= k; ++x)
    for (int y = 0; y <= k; ++y)
      if (x != j) b.push_back({x, y});
  return MeshPattern(pi, ShadingSet(std::move(b)));
}

// row(pi, i) plus the single extra box (j, i) inside the free row.
inline MeshPattern row1(const Permutation& pi, int i, int j) {
  const int k = pi.size();
  if (i < 0 || i > k || j < 0 || j > k)
    throw std::invalid_argument("row1 preset: index out of range");
  MeshPattern base = row(pi, i);
  return MeshPattern(pi, base.shading().united(ShadingSet({{j, i}})));
}

// The inner (k-1) x (k-1) block, no boundary boxes.
inline MeshPattern boxed(const Permutation& pi) {
  const int k = pi.size();
  std::vector<Box> b;
  for (int x = 1; x < k; ++x)
    for (int y = 1; y < k; ++y) b.push_back({x, y});
  return MeshPattern(pi, ShadingSet(std::move(b)));
}

// The full frame: outermost rows and columns.
inline MeshPattern border(const Permutation& pi) {
  const int k = pi.size();
  std::vector<Box> b;
  for (int t = 0; t <= k; ++t) {
    b.push_back({0, t});
    b.push_back({k, t});
    b.push_back({t, 0});
    b.push_back({t, k});
  }
  return MeshPattern(pi, ShadingSet(std::move(b)));
}

// Bottom and top rows only.
inline MeshPattern topbottom(const Permutation& pi) {
  const int k = pi.size();
  std::vector<Box> b;
  for (int x = 0; x <= k; ++x) {
    b.push_back({x, 0});
    b.push_back({x, k});
  }
  return MeshPattern(pi, ShadingSet(std::move(b)));
}

inline Permutation perm2143() { return Permutation({2, 1, 4, 3}); }

// 2143 with top and bottom rows plus the full right column (13 boxes).
inline MeshPattern sideshade() {
  MeshPattern tb = topbottom(perm2143());
  std::vector<Box> right;
  for (int y = 0; y <= 4; ++y) right.push_back({4, y});
  return MeshPattern(perm2143(), tb.shading().united(ShadingSet(std::move(right))));
}

// 2143 with the top row fully shaded and the bottom row shaded except its
// rightmost box (9 boxes).
inline MeshPattern nocorner() {
  std::vector<Box> b;
  for (int x = 0; x <= 3; ++x) b.push_back({x, 0});
  for (int x = 0; x <= 4; ++x) b.push_back({x, 4});
  return MeshPattern(perm2143(), ShadingSet(std::move(b)));
}

// Name-dispatched builder. i and j are required exactly where the named
// builders take them; sideshade and nocorner are fixed 2143 patterns and
// reject any other permutation.
inline MeshPattern preset(std::string_view name, const Permutation& pi,
                          std::optional<int> i = std::nullopt,
                          std::optional<int> j = std::nullopt) {
  auto need = [&](const std::optional<int>& v, const char* what) {
    if (!v) throw std::invalid_argument(std::string("preset: missing parameter ") + what);
    return *v;
  };
  if (name == "row") return row(pi, need(i, "i"));
  if (name == "col") return col(pi, need(j, "j"));
  if (name == "row1") return row1(pi, need(i, "i"), need(j, "j"));
  if (name == "boxed") return boxed(pi);
  if (name == "border") return border(pi);
  if (name == "topbottom") return topbottom(pi);
  if (name == "sideshade" || name == "nocorner") {
    if (pi != perm2143())
      throw std::invalid_argument("preset: " + std::string(name) + " is defined on 2143");
    return name == "sideshade" ? sideshade() : nocorner();
  }
  throw std::invalid_argument("preset: unknown name " + std::string(name));
}

}  // namespace presets
}  // namespace meshlimit
