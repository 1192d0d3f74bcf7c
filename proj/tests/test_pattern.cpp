#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "meshlimit/parse.hpp"
#include "meshlimit/pattern.hpp"

using meshlimit::Box;
using meshlimit::MeshPattern;
using meshlimit::Permutation;
using meshlimit::ShadingSet;
namespace presets = meshlimit::presets;

TEST_CASE("shading set normalizes and validates", "[pattern]") {
  const ShadingSet s({{1, 2}, {0, 0}, {1, 2}});
  CHECK(s.size() == 2);
  CHECK(s.boxes() == std::vector<Box>{{0, 0}, {1, 2}});
  CHECK(s.contains(1, 2));
  CHECK_FALSE(s.contains(2, 1));
  CHECK_THROWS_AS(ShadingSet({{-1, 0}}), std::invalid_argument);
  CHECK(ShadingSet::full(2).size() == 9);
}

TEST_CASE("shading set algebra", "[pattern]") {
  const ShadingSet a({{0, 0}, {1, 1}});
  const ShadingSet b({{1, 1}, {2, 2}});
  CHECK(a.united(b).size() == 3);
  CHECK(a.minus(b).boxes() == std::vector<Box>{{0, 0}});
  CHECK(ShadingSet({{1, 1}}).is_subset_of(a));
  CHECK_FALSE(b.is_subset_of(a));
}

TEST_CASE("mesh pattern rejects boxes outside its grid", "[pattern]") {
  CHECK_NOTHROW(MeshPattern(Permutation({2, 1}), ShadingSet({{2, 2}})));
  CHECK_THROWS_AS(MeshPattern(Permutation({2, 1}), ShadingSet({{3, 0}})),
                  std::invalid_argument);
}

TEST_CASE("quarter turn moves pattern and boxes together", "[pattern][symmetry]") {
  // (21, {(0,0)}) rotates to (12, {(0,2)}).
  const MeshPattern p(Permutation({2, 1}), ShadingSet({{0, 0}}));
  const MeshPattern r = p.rotate90();
  CHECK(r.perm() == Permutation({1, 2}));
  CHECK(r.shading().boxes() == std::vector<Box>{{0, 2}});
}

TEST_CASE("rotation of the top-bottom pattern shades two columns", "[pattern][symmetry]") {
  const MeshPattern tb = presets::topbottom(presets::perm2143());
  const MeshPattern r = tb.rotate90();
  CHECK(r.perm() == Permutation({3, 4, 1, 2}));
  std::vector<Box> expected;
  for (int y = 0; y <= 4; ++y) {
    expected.push_back({0, y});
    expected.push_back({4, y});
  }
  std::sort(expected.begin(), expected.end());
  CHECK(r.shading().boxes() == expected);
}

TEST_CASE("four quarter turns are the identity", "[pattern][symmetry]") {
  std::mt19937_64 rng(771);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 5);
    std::vector<int> w(static_cast<size_t>(k));
    for (int t = 0; t < k; ++t) w[static_cast<size_t>(t)] = t + 1;
    std::shuffle(w.begin(), w.end(), rng);
    std::vector<Box> boxes;
    for (int x = 0; x <= k; ++x)
      for (int y = 0; y <= k; ++y)
        if (rng() % 3 == 0) boxes.push_back({x, y});
    const MeshPattern p{Permutation(w), ShadingSet(boxes)};
    CHECK(p.rotate90().rotate90().rotate90().rotate90() == p);
    CHECK(p.reverse().reverse() == p);
    CHECK(p.complement().complement() == p);
    CHECK(p.inverse().inverse() == p);
    // rotate90 factors as inverse then complement
    CHECK(p.rotate90() == p.inverse().complement());
  }
}

TEST_CASE("orbit has at most eight members and contains the identity image",
          "[pattern][symmetry]") {
  const MeshPattern side = presets::sideshade();
  const auto orbit = side.orbit();
  CHECK(orbit.size() == 8);
  CHECK(orbit.front() == side);
  for (const MeshPattern& img : orbit)
    CHECK(std::count(orbit.begin(), orbit.end(), img) == 1);

  // A fully symmetric pattern collapses to a single image.
  const MeshPattern lone(Permutation({1}), ShadingSet());
  CHECK(lone.orbit().size() == 1);
}

TEST_CASE("subshading requires equal permutations", "[pattern]") {
  const MeshPattern small(Permutation({2, 1}), ShadingSet({{0, 0}}));
  const MeshPattern big(Permutation({2, 1}), ShadingSet({{0, 0}, {1, 1}}));
  CHECK(is_subshading(small, big));
  CHECK_FALSE(is_subshading(big, small));
  CHECK_THROWS_AS(
      is_subshading(small, MeshPattern(Permutation({1, 2}), ShadingSet({{0, 0}}))),
      std::invalid_argument);
}

TEST_CASE("preset shapes", "[pattern][preset]") {
  const Permutation pi = presets::perm2143();

  const MeshPattern row2 = presets::row(pi, 2);
  CHECK(row2.shading().size() == 20);
  CHECK_FALSE(row2.shaded(0, 2));
  CHECK(row2.shaded(0, 0));
  CHECK(row2.shaded(4, 4));

  const MeshPattern col2 = presets::col(pi, 2);
  CHECK(col2.shading().size() == 20);
  CHECK_FALSE(col2.shaded(2, 0));
  CHECK(col2.shaded(0, 2));

  const MeshPattern r1 = presets::row1(pi, 2, 3);
  CHECK(r1.shading().size() == 21);
  CHECK(r1.shaded(3, 2));
  CHECK_FALSE(r1.shaded(1, 2));

  const MeshPattern bx = presets::boxed(pi);
  CHECK(bx.shading().size() == 9);
  CHECK(bx.shaded(1, 1));
  CHECK_FALSE(bx.shaded(0, 1));

  const MeshPattern bd = presets::border(pi);
  CHECK(bd.shading().size() == 16);
  CHECK(bd.shaded(0, 0));
  CHECK(bd.shaded(4, 2));
  CHECK(bd.shaded(2, 4));
  CHECK_FALSE(bd.shaded(2, 2));

  const MeshPattern tb = presets::topbottom(pi);
  CHECK(tb.shading().size() == 10);
  CHECK(tb.shaded(3, 0));
  CHECK(tb.shaded(3, 4));
  CHECK_FALSE(tb.shaded(3, 2));

  const MeshPattern ss = presets::sideshade();
  CHECK(ss.shading().size() == 13);
  CHECK(ss.shaded(4, 2));
  CHECK_FALSE(ss.shaded(0, 2));

  const MeshPattern nc = presets::nocorner();
  CHECK(nc.shading().size() == 9);
  CHECK(nc.shaded(0, 0));
  CHECK(nc.shaded(4, 4));
  CHECK_FALSE(nc.shaded(4, 0));
}

TEST_CASE("preset dispatch by name", "[pattern][preset]") {
  const Permutation pi = presets::perm2143();
  CHECK(presets::preset("row", pi, 2) == presets::row(pi, 2));
  CHECK(presets::preset("col", pi, std::nullopt, 1) == presets::col(pi, 1));
  CHECK(presets::preset("row1", pi, 2, 3) == presets::row1(pi, 2, 3));
  CHECK(presets::preset("border", pi) == presets::border(pi));
  CHECK(presets::preset("sideshade", pi) == presets::sideshade());
  CHECK_THROWS_AS(presets::preset("row", pi), std::invalid_argument);
  CHECK_THROWS_AS(presets::preset("sideshade", Permutation({1, 2, 3, 4})),
                  std::invalid_argument);
  CHECK_THROWS_AS(presets::preset("frobnicate", pi), std::invalid_argument);
  CHECK_THROWS_AS(presets::row(pi, 5), std::invalid_argument);
}
