#include <doctest.h>

#include <set>

#include "taco/error.hpp"
#include "taco/guidance.hpp"

using namespace taco;

namespace {

TaskStatus task(const GuidanceReport& g, Task t) { return g.tasks[static_cast<std::size_t>(t)]; }

}  // namespace

TEST_CASE("range check boundary sits at one pixel") {
  // Fractions 1/4 each; a 2x2 canvas has threshold exactly 1/4.
  const Table even = make_table(Grid::from_rows({{1, 1}, {1, 1}}));
  CHECK(check_range(normalize(even), 2.0, 2.0).state == RangeState::Pass);
  CHECK(check_range(normalize(even), 2.0, 2.0).threshold == 0.25);
  CHECK(check_range(normalize(even), 2.0, 2.01).state == RangeState::Pass);
  CHECK(check_range(normalize(even), 2.0, 1.99).state == RangeState::Fail);

  const Table wide = make_table(Grid::from_rows({{1, 2000}}));
  const RangeStatus w = check_range(normalize(wide), 640, 360);
  CHECK(w.state == RangeState::Warn);
  CHECK(w.value_ratio == doctest::Approx(2000.0));
  CHECK(check_range(normalize(make_table(Grid::from_rows({{1, 1000}}))), 640, 360).state ==
        RangeState::Pass);
}

TEST_CASE("range check ignores pads") {
  Table t = make_table(Grid::from_rows({{1, 4}, {5, 1e-9}}));
  t.pad_mask = {false, false, false, true};
  t.values(1, 1) = 10.0 / 3.0;
  CHECK(check_range(normalize(t), 640, 360).state == RangeState::Pass);
}

TEST_CASE("cardinality compares counts with whole pixels") {
  const Table t = make_table(Grid(9, 3, 1.0));
  CHECK(check_cardinality(t, 100, 8).state == CardinalityState::Fail);
  CHECK(check_cardinality(t, 100, 8).axis == Axis::Rows);
  CHECK(check_cardinality(t, 100, 8.99).limit == 8);
  CHECK(check_cardinality(t, 100, 9).state == CardinalityState::Pass);
  const CardinalityStatus c = check_cardinality(t, 2.5, 100);
  CHECK(c.axis == Axis::Cols);
  CHECK(c.count == 3);
  CHECK(c.limit == 2);
}

TEST_CASE("axis and scale notes") {
  Table t = make_table(Grid::from_rows({{1, 2}, {3, 4}}));
  t.row_kind = AxisKind::Nominal;
  t.col_kind = AxisKind::NonAxial;
  const auto w = axis_guidance(t);
  REQUIRE(w.size() == 2);
  CHECK(w[0].rule == "axis.nominal-permutation");
  CHECK(w[0].axis == "rows");
  CHECK(w[1].rule == "axis.non-axial");
  CHECK(scale_guidance(t).empty());
  t.scale_type = ScaleType::Interval;
  t.interval_offset = 1.0;
  const auto n = scale_guidance(t);
  REQUIRE(n.size() == 2);
  CHECK(n[1].message.find("offset by 1 ") != std::string::npos);
}

TEST_CASE("task statuses react to labels, spread and range") {
  const Table t = make_table(Grid::from_rows({{1, 2}, {3, 4}}));
  const GuidanceReport base = guide(t, true, 640, 360);
  CHECK_FALSE(base.has_fail());
  CHECK(task(base, Task::RetrieveValue).status == Suitability::Conditional);
  CHECK(task(base, Task::DetermineRange).status == Suitability::Confuser);
  CHECK(task(base, Task::Sort).status == Suitability::Supported);

  CHECK(task(guide(t, false, 640, 360), Task::RetrieveValue).status == Suitability::Confuser);

  const Table narrow = make_table(Grid::from_rows({{1.0, 1.1}, {1.05, 1.15}}));
  const GuidanceReport n = guide(narrow, true, 640, 360);
  CHECK(task(n, Task::Cluster).status == Suitability::Confuser);
  CHECK(task(n, Task::Filter).status == Suitability::Confuser);
  CHECK(task(guide(make_table(Grid::from_rows({{1.0, 1.2}})), true, 640, 360), Task::Cluster).status ==
        Suitability::Conditional);

  const GuidanceReport tiny = guide(t, true, 2, 2);
  CHECK(tiny.range.state == RangeState::Fail);
  CHECK(tiny.has_fail());
  CHECK(task(tiny, Task::FindAnomalies).status == Suitability::Conditional);
  CHECK(task(tiny, Task::RetrieveValue).status == Suitability::Confuser);
  CHECK(task(tiny, Task::FindAnomalies).reasons.back().rule == "range.subpixel");

  Table interval = t;
  interval.scale_type = ScaleType::Interval;
  CHECK(task(guide(interval, true, 640, 360), Task::CharacterizeDistribution).reasons.size() == 2);

  CHECK_THROWS_AS(guide(t, true, 0, 360), Error);
}

TEST_CASE("every reason cites a known rule") {
  const auto ids = rule_ids();
  const std::set<std::string> unique(ids.begin(), ids.end());
  CHECK(unique.size() == ids.size());
  Table t = make_table(Grid::from_rows({{1, 1.1}, {1, 1.1}}));
  t.scale_type = ScaleType::Interval;
  const GuidanceReport g = guide(t, false, 2, 2);
  for (const auto& s : g.tasks) {
    for (const auto& r : s.reasons) {
      CHECK(unique.count(r.rule) == 1);
      CHECK(std::string(rule_anchor(r.rule)).size() > 0);
    }
  }
  CHECK_THROWS_AS(rule_anchor("no.such-rule"), Error);
}

TEST_CASE("text rendering lists every task") {
  const std::string text = render_text(guide(make_table(Grid::from_rows({{1, 2}})), true, 640, 360));
  CHECK(text.rfind("range: Pass", 0) == 0);
  CHECK(text.find("cardinality: Pass") != std::string::npos);
  for (std::size_t k = 0; k < kTaskCount; ++k) {
    CHECK(text.find(to_string(static_cast<Task>(k))) != std::string::npos);
  }
}
