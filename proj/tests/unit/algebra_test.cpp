#include <doctest.h>

#include <cmath>
#include <random>

#include "random_tables.hpp"
#include "taco/algebra.hpp"
#include "taco/error.hpp"
#include "taco/layout.hpp"

using namespace taco;

namespace {

Table sample() {
  return make_table(Grid::from_rows({{1, 2, 3}, {4, 5, 6}}), {"a", "b"}, {"x", "y", "z"});
}

}  // namespace

TEST_CASE("alpha text round-trips") {
  for (const char* text : {"permute-rows:1,0", "permute-cols:2,0,1", "transpose", "reciprocal",
                           "scale:10", "affine:1.8,32", "double-min", "outliers:2.5",
                           "decorrelate:cols", "set-cell:1,2,7.5", "seed:42"}) {
    CHECK(parse_alpha(text).describe() == text);
  }
  CHECK(parse_alpha("permute-rows").perm.empty());
  CHECK(parse_alpha("outliers").z_threshold == 2.0);
  CHECK_THROWS_AS(parse_alpha("scale"), Error);
  CHECK_THROWS_AS(parse_alpha("affine:1"), Error);
  CHECK_THROWS_AS(parse_alpha("rotate"), Error);
  CHECK_THROWS_AS(parse_alpha("seed:-1"), Error);
}

TEST_CASE("resolve_alpha draws a seeded non-identity permutation") {
  const Table t = sample();
  const Alpha a = resolve_alpha(parse_alpha("permute-cols"), t, 3);
  REQUIRE(a.perm.size() == 3);
  CHECK_FALSE((a.perm == std::vector<std::size_t>{0, 1, 2}));
  CHECK(resolve_alpha(parse_alpha("permute-cols"), t, 3).perm == a.perm);
  CHECK(resolve_alpha(Alpha::permute_rows({1, 0}), t, 99).perm == std::vector<std::size_t>{1, 0});
}

TEST_CASE("apply_alpha on a hand-checked table") {
  const Table t = sample();
  SUBCASE("permutations move values and labels") {
    const Table r = apply_alpha(t, Alpha::permute_rows({1, 0}));
    CHECK(r(0, 2) == 6.0);
    CHECK(r.row_labels[0] == "b");
    const Table c = apply_alpha(t, Alpha::permute_cols({2, 0, 1}));
    CHECK(c(1, 0) == 6.0);
    CHECK(c(1, 1) == 4.0);
    CHECK(c.col_labels[0] == "z");
    CHECK_THROWS_AS(apply_alpha(t, Alpha::permute_rows({0, 0})), Error);
    CHECK_THROWS_AS(apply_alpha(t, Alpha::permute_rows({0})), Error);
  }
  SUBCASE("reciprocal, scale and double-min") {
    CHECK(apply_alpha(t, Alpha::reciprocal())(1, 1) == doctest::Approx(0.2));
    CHECK(apply_alpha(t, Alpha::uniform_scale(10))(0, 2) == 30.0);
    CHECK_THROWS_AS(apply_alpha(t, Alpha::uniform_scale(-1)), Error);
    const Table d = apply_alpha(t, Alpha::double_min());
    CHECK(d(0, 0) == 2.0);
    CHECK(d(1, 2) == 6.0);
  }
  SUBCASE("affine needs interval data") {
    CHECK_THROWS_AS(apply_alpha(t, Alpha::affine(1.8, 32)), Error);
    Table i = t;
    i.scale_type = ScaleType::Interval;
    CHECK(apply_alpha(i, Alpha::affine(1.8, 32, "F"))(0, 0) == doctest::Approx(33.8));
    CHECK(apply_alpha(i, Alpha::affine(1.8, 32, "F")).unit == std::optional<std::string>("F"));
    CHECK_THROWS_AS(apply_alpha(i, Alpha::affine(1, -10)), Error);
  }
  SUBCASE("outliers are replaced by their row mean") {
    // Row 0: mean 14, population sd 24 with one value at 62: z = 2.
    const Table o = make_table(Grid::from_rows({{2, 2, 2, 2, 2, 2, 2, 2, 2, 62}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}));
    const Table low = apply_alpha(o, Alpha::replace_outliers(1.9));
    CHECK(low(0, 9) == doctest::Approx(8.0));
    CHECK(low(1, 9) == 10.0);
    CHECK(apply_alpha(o, Alpha::replace_outliers(3.5))(0, 9) == 62.0);
  }
  SUBCASE("decorrelation equalizes the marginal") {
    const Table r = apply_alpha(t, Alpha::decorrelate(Axis::Rows));
    CHECK(r(0, 0) + r(0, 1) + r(0, 2) == doctest::Approx(10.5));
    CHECK(r(1, 0) + r(1, 1) + r(1, 2) == doctest::Approx(10.5));
    CHECK(r(0, 1) / r(0, 0) == doctest::Approx(2.0));
  }
  SUBCASE("set-cell") {
    CHECK(apply_alpha(t, Alpha::set_cell(1, 0, 9))(1, 0) == 9.0);
    CHECK_THROWS_AS(apply_alpha(t, Alpha::set_cell(2, 0, 9)), Error);
    CHECK_THROWS_AS(apply_alpha(t, Alpha::set_cell(0, 0, 0)), Error);
  }
  SUBCASE("transpose and seed") {
    CHECK(apply_alpha(t, Alpha::transpose()).rows() == 3);
    CHECK(apply_alpha(t, Alpha::seed_change(5)) == t);
  }
}

TEST_CASE("pads are refilled with the data mean after an alpha") {
  Table t = make_table(Grid::from_rows({{1, 3}, {2, 2}}));
  t.pad_mask = {false, false, false, true};
  const Table s = apply_alpha(t, Alpha::uniform_scale(3));
  CHECK(s(1, 1) == doctest::Approx(6.0));
  const Table d = apply_alpha(t, Alpha::double_min());
  CHECK(d(0, 0) == 2.0);
  CHECK(d(1, 1) == doctest::Approx(7.0 / 3.0));
}

TEST_CASE("semantic triviality follows the metadata") {
  Table t = sample();
  CHECK_FALSE(semantically_trivial(Alpha::permute_rows({1, 0}), t));
  t.row_kind = AxisKind::Nominal;
  CHECK(semantically_trivial(Alpha::permute_rows({1, 0}), t));
  CHECK_FALSE(semantically_trivial(Alpha::permute_cols({1, 0, 2}), t));
  CHECK(semantically_trivial(Alpha::transpose(), t));
  CHECK(semantically_trivial(Alpha::seed_change(2), t));
  CHECK_FALSE(semantically_trivial(Alpha::uniform_scale(2), t));
  CHECK_FALSE(semantically_trivial(Alpha::affine(2, 1), t));
  t.scale_type = ScaleType::Interval;
  CHECK(semantically_trivial(Alpha::affine(2, 1), t));
}

TEST_CASE("verdict table") {
  CHECK(decide_verdict(true, true, true) == Verdict::Hallucinator);
  CHECK(decide_verdict(true, false, true) == Verdict::Commutes);
  CHECK(decide_verdict(false, true, true) == Verdict::Commutes);
  CHECK(decide_verdict(false, false, true) == Verdict::Confuser);
  for (bool a : {false, true})
    for (bool b : {false, true}) CHECK(decide_verdict(a, b, false) == Verdict::Inconclusive);
}

TEST_CASE("layout comparison") {
  Mesh a(2, 2, 30.0, 40.0), b = a;
  CHECK(layout_distance(a, b) == 0.0);
  b.set_vertex(1, 1, {18.0, 24.0});  // moved by (3, 4)
  const LayoutComparison c = compare_layouts(a, b);
  CHECK(c.distance == doctest::Approx(5.0 / 9.0 / 50.0));
  CHECK(c.cell_area_delta.size() == 4);
  CHECK_THROWS_AS(compare_layouts(a, Mesh(2, 2, 30.0, 41.0)), Error);
  CHECK_THROWS_AS(compare_layouts(a, Mesh(2, 3, 30.0, 40.0)), Error);
}

TEST_CASE("untranspose_mesh reflects areas back onto the original cells") {
  std::mt19937_64 rng(8);
  const Table t = testing::random_table(rng, std::size_t{3}, std::size_t{4});
  LayoutParams p;
  p.width = 400.0;
  p.height = 250.0;
  const LayoutResult r = layout_table(transpose(t), p);
  const Mesh back = untranspose_mesh(r.mesh);
  CHECK(back.rows() == 3);
  CHECK(back.cols() == 4);
  CHECK(check_topology(back).empty());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(cell_area(back, i, j) == doctest::Approx(cell_area(r.mesh, j, i)).epsilon(1e-12));
    }
  }
  const Mesh twice = untranspose_mesh(untranspose_mesh(r.mesh));
  for (std::size_t k = 0; k < twice.xs().size(); ++k) {
    CHECK(twice.xs()[k] == doctest::Approx(r.mesh.xs()[k]).epsilon(1e-14));
    CHECK(twice.ys()[k] == doctest::Approx(r.mesh.ys()[k]).epsilon(1e-14));
  }
}

TEST_CASE("a probe of a transposition compares in the original frame") {
  const Table sym = make_table(Grid::from_rows({{4, 2, 1}, {2, 5, 3}, {1, 3, 6}}));
  const ProbeReport r = run_probe(sym, Alpha::transpose(), LayoutParams{}, ProbeConfig{});
  CHECK(r.data_distance_raw == 0.0);
  CHECK(r.semantically_trivial);
  CHECK(r.before_converged);
}

TEST_CASE("suite catalog order, skips and seeding") {
  const Table t = make_table(Grid::from_rows({{3, 1, 4}, {1, 5, 9}, {2, 6, 5}}));
  const SuiteReport s = run_suite(t, LayoutParams{}, ProbeConfig{}, 21);
  const char* kinds[] = {"permute-rows", "permute-cols", "transpose", "reciprocal", "scale:10",
                         "double-min", "outliers:2", "decorrelate:rows", "decorrelate:cols",
                         "set-cell", "seed"};
  REQUIRE(s.reports.size() == 11);
  for (std::size_t k = 0; k < 11; ++k) {
    CHECK(s.reports[k].description.rfind(kinds[k], 0) == 0);
  }
  REQUIRE(s.skipped.size() == 1);
  CHECK(s.skipped[0].alpha == "affine:1.8,32");
  const Alpha& set = s.reports[9].alpha;
  CHECK(set.value == 2.0 * t(set.row, set.col));
  CHECK(s.reports[4].verdict == Verdict::Confuser);

  const SuiteReport again = run_suite(t, LayoutParams{}, ProbeConfig{}, 21, 3);
  for (std::size_t k = 0; k < 11; ++k) {
    CHECK(again.reports[k].description == s.reports[k].description);
    CHECK(again.reports[k].layout_distance == s.reports[k].layout_distance);
  }
  const SuiteReport other = run_suite(t, LayoutParams{}, ProbeConfig{}, 22);
  const bool differs = other.reports[0].description != s.reports[0].description ||
                       other.reports[10].description != s.reports[10].description;
  CHECK(differs);
}

TEST_CASE("single-row tables skip row probes") {
  const SuiteReport s = run_suite(make_table(Grid::from_rows({{1, 2, 3}})), LayoutParams{},
                                  ProbeConfig{}, 1);
  bool skipped_rows = false;
  for (const auto& k : s.skipped) skipped_rows |= k.alpha == "permute-rows";
  CHECK(skipped_rows);
}

TEST_CASE("probe thresholds must be positive") {
  ProbeConfig pc;
  pc.data_significance = 0.0;
  CHECK_THROWS_AS(pc.validate(), Error);
}
