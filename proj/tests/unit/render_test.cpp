#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string>

#include "random_tables.hpp"
#include "taco/error.hpp"
#include "taco/layout.hpp"
#include "taco/render.hpp"

using namespace taco;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("format_number round-trips and drops noise") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(12.5) == "12.5");
  CHECK(format_number(500.0) == "500");
  std::mt19937_64 rng(2);
  for (int k = 0; k < 1000; ++k) {
    const double v = (testing::unit(rng) - 0.5) * 1e4;
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("ramps") {
  const auto greys = named_ramp("greys");
  CHECK(ramp_color(greys, 0.0) == "#f0f0f0");
  CHECK(ramp_color(greys, 1.0) == "#252525");
  CHECK(ramp_color(greys, 7.0) == "#252525");
  CHECK(ramp_color(named_ramp("blues"), 0.5) == "#6baed6");
  CHECK_THROWS_AS(named_ramp("rainbow"), Error);

  Table t = make_table(Grid::from_rows({{2, 4}, {6, 100}}));
  t.pad_mask = {false, false, false, true};
  const auto pos = ramp_positions(t);
  CHECK(pos[0] == 0.0);
  CHECK(pos[1] == doctest::Approx(0.5));
  CHECK(pos[2] == 1.0);
  CHECK(std::isnan(pos[3]));
  const auto flat = ramp_positions(make_table(Grid(2, 2, 3.0)));
  CHECK(flat[3] == 0.5);
}

TEST_CASE("render_svg emits one polygon per cell and optional labels") {
  const Table t = make_table(Grid::from_rows({{1, 2, 3}, {4, 5, 6}}), {"a", "b"}, {"x", "y", "z"});
  const Mesh m = layout_table(t, LayoutParams{}).mesh;
  RenderSpec spec;
  const std::string plain = render_svg(m, t, spec);
  CHECK(plain.rfind("<?xml", 0) == 0);
  CHECK(count(plain, "<polygon") == 6);
  CHECK(count(plain, "id=\"cell-1-2\"") == 1);
  CHECK(count(plain, "<text") == 0);
  CHECK(plain.find("width=\"520\"") != std::string::npos);

  spec.label_mode = LabelMode::Both;
  spec.color_ramp = "viridis";
  const std::string labelled = render_svg(m, t, spec);
  CHECK(count(labelled, "<text") == 6);
  CHECK(labelled.find(">b/x</tspan>") != std::string::npos);
  CHECK(labelled.find("#440154") != std::string::npos);  // minimum cell
  CHECK(labelled.find("#fde725") != std::string::npos);  // maximum cell
  CHECK(render_svg(m, t, spec) == labelled);

  CHECK_THROWS_AS(render_svg(Mesh(3, 2, 500, 500), t, spec), Error);
  spec.stroke_width = -1.0;
  CHECK_THROWS_AS(render_svg(m, t, spec), Error);
}

TEST_CASE("pad cells are drawn in the pad style") {
  Table t = make_table(Grid::from_rows({{1, 2}, {3, 2}}));
  t.pad_mask = {false, false, false, true};
  const std::string svg = render_svg(Mesh(2, 2, 100, 100), t, RenderSpec{});
  CHECK(count(svg, "class=\"pad\"") == 1);
  CHECK(svg.find("id=\"cell-1-1\" class=\"pad\"") != std::string::npos);
}

TEST_CASE("months are composed row-major under titles") {
  std::vector<MonthLayout> months;
  for (unsigned mo = 1; mo <= 4; ++mo) {
    months.push_back({{2016, mo}, Mesh(1, 1, 100, 50), make_table(Grid(1, 1, 1.0))});
  }
  CalendarSpec cal;
  const std::string svg = compose_months(months, cal, RenderSpec{});
  CHECK(count(svg, "<g id=\"month-") == 4);
  CHECK(svg.find(">2016-03</text>") != std::string::npos);
  // Fourth month wraps to the second row of a three-wide arrangement.
  const auto p = svg.find("id=\"month-2016-04\" transform=\"translate(0,");
  CHECK(p != std::string::npos);
  CHECK_THROWS_AS(compose_months({}, cal, RenderSpec{}), Error);
}
