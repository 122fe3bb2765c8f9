#include <doctest.h>

#include <cmath>
#include <random>

#include "random_tables.hpp"
#include "taco/error.hpp"
#include "taco/layout.hpp"

using namespace taco;

TEST_CASE("targets tile the rectangle and survive rescaling bit for bit") {
  const Table t = make_table(Grid::from_rows({{1, 2, 3}, {4, 5, 6}}));
  const auto targets = area_targets(normalize(t), 300.0, 200.0);
  double sum = 0.0;
  for (double a : targets) sum += a;
  CHECK(sum == doctest::Approx(60000.0).epsilon(1e-6));
  CHECK(targets[0] == doctest::Approx(60000.0 / 21.0).epsilon(1e-7));

  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) {
    const Table r = testing::random_table(rng, 6);
    Grid scaled = r.values;
    for (double& v : scaled.data()) v *= 1000.0;
    CHECK(area_targets(normalize(r), 500, 500) == area_targets(normalize(make_table(scaled)), 500, 500));
  }
}

TEST_CASE("parameter validation") {
  LayoutParams p;
  p.width = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.shrink_factor = 1.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.jitter = -0.1;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("the initial layout is exact for a rank-one table") {
  const Table t = make_table(Grid::from_rows({{1, 2, 4}, {3, 6, 12}}));
  const LayoutParams p;
  const Mesh m = initial_layout(normalize(t), p);
  // Exact up to the 24-bit rounding of the targets.
  CHECK(max_relative_area_error(m, normalize(t)) < 0x1.0p-23);
  const LayoutResult r = optimize(normalize(t), p);
  CHECK(r.converged);
  CHECK(r.iterations == 0);
}

TEST_CASE("a 1x1 table is the rectangle itself") {
  const LayoutResult r = layout_table(make_table(Grid(1, 1, 7.0)), LayoutParams{});
  CHECK(r.converged);
  CHECK(r.mesh == Mesh(1, 1, 500.0, 500.0));
}

TEST_CASE("optimize converges with a non-increasing objective and valid topology") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 20; ++k) {
    const Table t = testing::random_table(rng, 6);
    LayoutParams p;
    p.width = 640.0;
    p.height = 360.0;
    const LayoutResult r = layout_table(t, p);
    CAPTURE(k);
    CHECK(r.converged);
    CHECK(r.max_relative_area_error <= p.tolerance);
    CHECK(r.max_relative_area_error == doctest::Approx(max_relative_area_error(r.mesh, normalize(t))));
    CHECK(check_topology(r.mesh).empty());
    for (std::size_t s = 1; s < r.objective_trace.size(); ++s) {
      CHECK(r.objective_trace[s] <= r.objective_trace[s - 1]);
    }
  }
}

TEST_CASE("layouts are deterministic and seed-dependent only with jitter") {
  const Table t = make_table(Grid::from_rows({{5, 1, 3}, {2, 8, 1}, {4, 2, 6}}));
  LayoutParams p;
  CHECK(layout_table(t, p).mesh == layout_table(t, p).mesh);
  LayoutParams q = p;
  q.seed = 17;
  CHECK(layout_table(t, p).mesh == layout_table(t, q).mesh);
  p.jitter = q.jitter = 0.05;
  CHECK(layout_table(t, p).mesh == layout_table(t, p).mesh);
  CHECK_FALSE(layout_table(t, p).mesh == layout_table(t, q).mesh);
}

TEST_CASE("an unreachable iteration cap reports non-convergence") {
  const Table t = make_table(Grid::from_rows({{100, 1}, {1, 100}}));
  LayoutParams p;
  p.max_iterations = 1;
  const LayoutResult r = layout_table(t, p);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations <= 1);
  CHECK_FALSE(r.stop_reason.empty());
}

TEST_CASE("targets too small for double precision are rejected") {
  const Table t = make_table(Grid::from_rows({{1e300, 1e-300}}));
  CHECK_THROWS_AS(layout_table(t, LayoutParams{}), Error);
}
