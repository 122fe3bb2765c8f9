#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "taco/table.hpp"

namespace taco {

enum class Weekday { Sunday, Monday, Tuesday, Wednesday, Thursday, Friday, Saturday };

const char* to_string(Weekday day);
const char* short_name(Weekday day);
Weekday parse_weekday(std::string_view text);

struct Date {
  int year;
  unsigned month;  // 1..12
  unsigned day;    // 1..31

  auto operator<=>(const Date&) const = default;
};

struct YearMonth {
  int year;
  unsigned month;

  auto operator<=>(const YearMonth&) const = default;
  std::string to_string() const;  // "YYYY-MM"
};

/// Days since 1970-01-01 in the proleptic Gregorian calendar.
std::int64_t days_from_civil(const Date& d);
Date civil_from_days(std::int64_t days);
Weekday weekday_of(const Date& d);
unsigned days_in_month(int year, unsigned month);

Date parse_date(std::string_view text);            // "YYYY-MM-DD"
YearMonth parse_year_month(std::string_view text);  // "YYYY-MM"

enum class PadPolicy { MeanFill };

struct CalendarSpec {
  Weekday week_start = Weekday::Sunday;
  std::size_t arrangement_rows = 4;  // months are composed row-major into this grid
  std::size_t arrangement_cols = 3;
  PadPolicy pad_policy = PadPolicy::MeanFill;
};

struct DatedValue {
  Date date;
  double value;
};

/// Weeks x 7 table for one month. Columns run from spec.week_start; days
/// outside the month, and days of the month missing from the series, hold
/// the mean of the month's data and are flagged in pad_mask. Repeated dates
/// are summed. Throws EmptyMonth, NonPositiveValue.
Table build_month_table(const std::vector<DatedValue>& series, YearMonth month,
                        const CalendarSpec& spec);

/// Months touched by the series, ascending.
std::vector<YearMonth> months_in(const std::vector<DatedValue>& series);

/// Parses "date,value" CSV (an optional header line is skipped).
std::vector<DatedValue> parse_dated_series(std::string_view csv);

}  // namespace taco
