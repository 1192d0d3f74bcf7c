#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "meshlimit/exact.hpp"
#include "meshlimit/formulas.hpp"

using meshlimit::Family;
using meshlimit::FormulaId;
using meshlimit::Int;
using meshlimit::Rat;
using meshlimit::RangeError;
using meshlimit::binomial;
using meshlimit::border0_bound;
using meshlimit::catalan;
using meshlimit::evaluate;
using meshlimit::factorial;
using meshlimit::family_from_name;
using meshlimit::family_limit;
using meshlimit::family_name;
using meshlimit::formula_border;
using meshlimit::formula_nocorner;
using meshlimit::formula_row;
using meshlimit::formula_row1;
using meshlimit::formula_sideshade;
using meshlimit::formula_sideshade_triple_sum;
using meshlimit::formula_topbottom_adjacent;
using meshlimit::formula_topbottom_nonadjacent;
using meshlimit::harmonic_approx;
using meshlimit::harmonic_exact;
using meshlimit::ratio_at;

TEST_CASE("integer helpers", "[exact]") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(4, 7) == 0);
  CHECK(binomial(4, -1) == 0);
  CHECK(catalan(0) == 1);
  CHECK(catalan(5) == 42);
  CHECK(catalan(8) == 1430);
  CHECK_THROWS_AS(meshlimit::exact_div(Int(7), Int(2)), std::logic_error);
  CHECK(meshlimit::exact_div(Int(42), Int(6)) == 7);
}

TEST_CASE("harmonic numbers", "[exact]") {
  CHECK(harmonic_exact(1) == 1);
  CHECK(harmonic_exact(4) == Rat(25, 12));
  CHECK_THROWS_AS(harmonic_exact(10001), RangeError);
  const double exact = harmonic_exact(10000).convert_to<double>();
  CHECK(std::abs(harmonic_approx(10000) - exact) < 1e-12);
}

TEST_CASE("row and row1 families", "[formula]") {
  CHECK(formula_row(4, 4).value == 1);
  CHECK(formula_row(4, 5).value == 5);
  CHECK(formula_row(4, 6).value == 30);
  CHECK(formula_row(4, 8).value == 1680);
  CHECK(formula_row(2, 5).value == 60);
  CHECK(formula_row(3, 5).value == 20);
  CHECK(formula_row(4, 6).ratio == Rat(1, 24));
  CHECK(formula_row(1, 5).value == 120);

  CHECK(formula_row1(4, 4).value == 1);
  CHECK(formula_row1(4, 5).value == 4);
  CHECK(formula_row1(4, 6).value == 20);
  CHECK(formula_row1(4, 8).value == 840);
  CHECK(formula_row1(4, 6).ratio == Rat(1, 36));

  CHECK_THROWS_AS(formula_row(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(formula_row(4, 3), RangeError);
  CHECK_THROWS_AS(formula_row1(4, 3), RangeError);
}

TEST_CASE("bordered family and its vanishing bound", "[formula]") {
  CHECK(formula_border(4).value == 1);
  CHECK(formula_border(5).value == 9);
  CHECK(formula_border(6).value == 72);
  CHECK(formula_border(7).value == 600);
  CHECK(formula_border(8).value == 5400);
  CHECK(formula_border(9).value == 52920);
  CHECK(formula_border(12).value == 81648000);
  CHECK(formula_border(5).ratio == Rat(9, 120));
  CHECK_THROWS_AS(formula_border(3), RangeError);

  CHECK(border0_bound(5) == 48);
  CHECK(border0_bound(7) == 1440);
  // bound over n! falls like 2/n
  CHECK(Rat(border0_bound(100), factorial(100)) == Rat(2, 100));
}

TEST_CASE("top-bottom families", "[formula]") {
  CHECK(formula_topbottom_nonadjacent(4).value == 1);
  CHECK(formula_topbottom_nonadjacent(5).value == 11);
  CHECK(formula_topbottom_nonadjacent(6).value == 100);
  CHECK(formula_topbottom_nonadjacent(7).value == 908);
  CHECK(formula_topbottom_nonadjacent(8).value == 8676);
  CHECK(formula_topbottom_nonadjacent(10).value == 977376);
  CHECK(formula_topbottom_nonadjacent(12).value == 147504960);

  CHECK(formula_topbottom_adjacent(4).value == 1);
  CHECK(formula_topbottom_adjacent(5).value == 11);
  CHECK(formula_topbottom_adjacent(6).value == 99);
  CHECK(formula_topbottom_adjacent(7).value == 889);
  CHECK(formula_topbottom_adjacent(8).value == 8417);
  CHECK(formula_topbottom_adjacent(10).value == 937591);
  CHECK(formula_topbottom_adjacent(12).value == 140859789);

  CHECK_THROWS_AS(formula_topbottom_nonadjacent(3), RangeError);
  CHECK_THROWS_AS(formula_topbottom_adjacent(3), RangeError);
}

TEST_CASE("side-shaded family in both displayed forms", "[formula]") {
  CHECK(formula_sideshade(4).value == 1);
  CHECK(formula_sideshade(5).value == 10);
  CHECK(formula_sideshade(6).value == 86);
  CHECK(formula_sideshade(7).value == 756);
  CHECK(formula_sideshade(8).value == 7092);
  CHECK(formula_sideshade(10).value == 787824);
  CHECK(formula_sideshade(12).value == 118956960);

  for (int n = 4; n <= 60; ++n)
    CHECK(formula_sideshade_triple_sum(n).value == formula_sideshade(n).value);
  CHECK(formula_sideshade_triple_sum(200).value == formula_sideshade(200).value);
}

TEST_CASE("side-shaded bracket matches its harmonic closed form", "[formula]") {
  // sum_{k=2}^{n-2} (n-k-1)/k = (n-1)(H_{n-2} - 1) - (n-3)
  for (int n : {4, 5, 6, 10, 50, 200}) {
    Rat s = 0;
    for (int k = 2; k <= n - 2; ++k) s += Rat(n - k - 1, k);
    CHECK(s == Rat(n - 1) * (harmonic_exact(n - 2) - 1) - (n - 3));
  }
}

TEST_CASE("corner-free family", "[formula]") {
  CHECK(formula_nocorner(4).value == 1);
  CHECK(formula_nocorner(5).value == 12);
  CHECK(formula_nocorner(6).value == 116);
  CHECK(formula_nocorner(7).value == 1104);
  CHECK(formula_nocorner(8).value == 10956);
  CHECK(formula_nocorner(10).value == 1308384);
  CHECK(formula_nocorner(12).value == 206251200);
  CHECK_THROWS_AS(formula_nocorner(3), RangeError);
}

TEST_CASE("formula values stay integral far beyond the enumeration cap", "[formula]") {
  for (int n = 4; n <= 64; ++n) {
    CHECK_NOTHROW(formula_sideshade(n));
    CHECK_NOTHROW(formula_sideshade_triple_sum(n));
    CHECK_NOTHROW(formula_nocorner(n));
    CHECK_NOTHROW(formula_topbottom_nonadjacent(n));
    CHECK_NOTHROW(formula_topbottom_adjacent(n));
  }
}

TEST_CASE("the side-shaded count never exceeds the top-bottom count", "[formula]") {
  // More shading can only lose hosts; the closed forms must respect that.
  for (int n = 4; n <= 200; ++n)
    CHECK(formula_sideshade(n).value <= formula_topbottom_nonadjacent(n).value);
  for (int n : {500, 1000})
    CHECK(formula_sideshade(n).value <= formula_topbottom_nonadjacent(n).value);
}

TEST_CASE("family names round trip", "[formula]") {
  for (Family f : {Family::row, Family::col, Family::row1, Family::border,
                   Family::border_zero, Family::topbottom_nonadjacent,
                   Family::topbottom_adjacent, Family::sideshade, Family::nocorner})
    CHECK(family_from_name(family_name(f)) == f);
  CHECK_THROWS_AS(family_from_name("nope"), std::invalid_argument);
}

TEST_CASE("evaluate dispatches with parameter validation", "[formula]") {
  CHECK(evaluate({Family::row, 4}, 6).value == 30);
  CHECK(evaluate({Family::col, 4}, 6).value == 30);
  CHECK(evaluate({Family::row1, 4}, 6).value == 20);
  CHECK(evaluate({Family::border}, 6).value == 72);
  CHECK(evaluate({Family::border_zero}, 6).value == 240);
  CHECK(evaluate({Family::sideshade}, 6).value == 86);
  CHECK(evaluate({Family::nocorner}, 6).value == 116);
  CHECK_THROWS_AS(evaluate({Family::row, 0}, 6), std::invalid_argument);
}

TEST_CASE("streaming ratios agree with exact ratios where both exist", "[ratio]") {
  for (int n : {6, 10, 40, 120}) {
    CHECK(std::abs(ratio_at({Family::border}, n) -
                   formula_border(n).ratio.convert_to<double>()) < 1e-12);
    CHECK(std::abs(ratio_at({Family::topbottom_nonadjacent}, n) -
                   formula_topbottom_nonadjacent(n).ratio.convert_to<double>()) < 1e-12);
    CHECK(std::abs(ratio_at({Family::topbottom_adjacent}, n) -
                   formula_topbottom_adjacent(n).ratio.convert_to<double>()) < 1e-12);
    CHECK(std::abs(ratio_at({Family::sideshade}, n) -
                   formula_sideshade(n).ratio.convert_to<double>()) < 1e-12);
    CHECK(std::abs(ratio_at({Family::nocorner}, n) -
                   formula_nocorner(n).ratio.convert_to<double>()) < 1e-12);
    CHECK(std::abs(ratio_at({Family::row1, 4}, n) -
                   formula_row1(4, n).ratio.convert_to<double>()) < 1e-15);
  }
}

TEST_CASE("row ratio is exact", "[ratio]") {
  CHECK(ratio_at({Family::row, 4}, 10) == 1.0 / 24.0);
  CHECK(ratio_at({Family::row, 4}, 1000) == 1.0 / 24.0);
  CHECK(ratio_at({Family::col, 4}, 1000) == 1.0 / 24.0);
  CHECK(ratio_at({Family::row, 2}, 100) == 0.5);
}

TEST_CASE("ratio range guards mirror evaluation cost", "[ratio]") {
  CHECK_NOTHROW(ratio_at({Family::sideshade}, 1000000));
  CHECK_THROWS_AS(ratio_at({Family::sideshade}, 1000001), RangeError);
  CHECK_NOTHROW(ratio_at({Family::topbottom_nonadjacent}, 10000));
  CHECK_THROWS_AS(ratio_at({Family::topbottom_nonadjacent}, 10001), RangeError);
  CHECK_NOTHROW(ratio_at({Family::nocorner}, 500));
  CHECK_THROWS_AS(ratio_at({Family::nocorner}, 501), RangeError);
  CHECK_THROWS_AS(ratio_at({Family::border}, 3), RangeError);
  CHECK_THROWS_AS(ratio_at({Family::row, 0}, 10), std::invalid_argument);
}

TEST_CASE("ratio limits", "[ratio]") {
  CHECK(family_limit({Family::row, 4}) == 1.0 / 24.0);
  CHECK(family_limit({Family::border}) == 0.25);
  CHECK(family_limit({Family::sideshade}) == 0.5);
  CHECK(family_limit({Family::nocorner}) == 1.0);
  CHECK(family_limit({Family::border_zero}) == 0.0);
}
