#include <doctest.h>

#include "taco/calendar.hpp"
#include "taco/error.hpp"

using namespace taco;

namespace {

// Sakamoto's method, 0 = Sunday.
int sakamoto(int y, int m, int d) {
  static const int t[] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
  if (m < 3) y -= 1;
  return (y + y / 4 - y / 100 + y / 400 + t[m - 1] + d) % 7;
}

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

}  // namespace

TEST_CASE("weekday_of agrees with Sakamoto's formula") {
  for (int y = 1890; y <= 2110; y += 7) {
    for (unsigned m = 1; m <= 12; ++m) {
      for (unsigned d = 1; d <= days_in_month(y, m); d += 3) {
        CHECK(static_cast<int>(weekday_of({y, m, d})) == sakamoto(y, static_cast<int>(m), static_cast<int>(d)));
      }
    }
  }
}

TEST_CASE("civil day numbers round-trip") {
  CHECK(days_from_civil({1970, 1, 1}) == 0);
  CHECK(days_from_civil({2000, 3, 1}) == 11017);
  for (std::int64_t z = -800000; z < 800000; z += 997) {
    CHECK(days_from_civil(civil_from_days(z)) == z);
  }
}

TEST_CASE("month lengths") {
  for (int y : {1900, 2000, 2015, 2016, 2100}) {
    CHECK(days_in_month(y, 2) == (leap(y) ? 29u : 28u));
    CHECK(days_in_month(y, 4) == 30u);
    CHECK(days_in_month(y, 12) == 31u);
  }
}

TEST_CASE("date parsing") {
  CHECK(parse_date("2016-02-29") == Date{2016, 2, 29});
  CHECK_THROWS_AS(parse_date("2015-02-29"), Error);
  CHECK_THROWS_AS(parse_date("2016-13-01"), Error);
  CHECK_THROWS_AS(parse_date("16-1-1"), Error);
  CHECK(parse_year_month("2016-07").to_string() == "2016-07");
  CHECK(parse_weekday("monday") == Weekday::Monday);
  CHECK(parse_weekday("Sat") == Weekday::Saturday);
}

TEST_CASE("month table shape and padding follow the weekday oracle") {
  for (int y : {2015, 2016}) {
    for (unsigned m = 1; m <= 12; ++m) {
      for (Weekday start : {Weekday::Sunday, Weekday::Monday}) {
        std::vector<DatedValue> series;
        const unsigned days = days_in_month(y, m);
        for (unsigned d = 1; d <= days; ++d) series.push_back({{y, m, d}, static_cast<double>(d)});
        CalendarSpec spec;
        spec.week_start = start;
        const Table t = build_month_table(series, {y, m}, spec);
        const int offset = (sakamoto(y, static_cast<int>(m), 1) - static_cast<int>(start) + 7) % 7;
        const std::size_t weeks = (static_cast<std::size_t>(offset) + days + 6) / 7;
        CAPTURE(y);
        CAPTURE(m);
        REQUIRE(t.rows() == weeks);
        REQUIRE(t.cols() == 7);
        CHECK(t.col_labels.front() == short_name(start));
        // Day d sits at slot offset + d - 1.
        for (unsigned d = 1; d <= days; ++d) {
          const std::size_t slot = static_cast<std::size_t>(offset) + d - 1;
          CHECK(t(slot / 7, slot % 7) == static_cast<double>(d));
          CHECK_FALSE(t.is_pad(slot / 7, slot % 7));
        }
        std::size_t pads = 0;
        for (std::size_t i = 0; i < t.rows(); ++i)
          for (std::size_t j = 0; j < 7; ++j) pads += t.is_pad(i, j);
        CHECK(pads == weeks * 7 - days);
        if (offset > 0) CHECK(t(0, 0) == doctest::Approx((days + 1) / 2.0));
      }
    }
  }
}

TEST_CASE("January 2016 starting on Sunday") {
  std::vector<DatedValue> series{{{2016, 1, 1}, 4.0}, {{2016, 1, 1}, 2.0}, {{2016, 1, 31}, 3.0}};
  const Table t = build_month_table(series, {2016, 1}, CalendarSpec{});
  CHECK(t.rows() == 6);  // Friday the 1st, Sunday the 31st
  CHECK(t(0, 5) == 6.0);  // repeated dates are summed
  CHECK(t(5, 0) == 3.0);
  CHECK(t.is_pad(0, 0));
  CHECK(t.is_pad(2, 2));  // a missing day is padded too
  CHECK(t(2, 2) == doctest::Approx(4.5));
}

TEST_CASE("series helpers") {
  const auto series = parse_dated_series("date,value\n2016-03-05,2\n2016-01-02,1.5\n2016-03-09,4\n");
  REQUIRE(series.size() == 3);
  const auto months = months_in(series);
  REQUIRE(months.size() == 2);
  CHECK(months[0].to_string() == "2016-01");
  CHECK(months[1].to_string() == "2016-03");
  CHECK_THROWS_AS(build_month_table(series, {2016, 2}, CalendarSpec{}), Error);
  CHECK_THROWS_AS(build_month_table(parse_dated_series("2016-01-01,-3\n"), {2016, 1}, CalendarSpec{}), Error);
  CHECK_THROWS_AS(parse_dated_series("2016-01-01,abc\n"), Error);
}
