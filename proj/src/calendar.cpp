#include "taco/calendar.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "taco/error.hpp"

namespace taco {

namespace {

constexpr const char* kWeekdayNames[] = {"sunday",   "monday", "tuesday", "wednesday",
                                         "thursday", "friday", "saturday"};
constexpr const char* kWeekdayShort[] = {"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};

template <typename T>
T parse_field(std::string_view text, std::string_view what) {
  T out{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    throw Error(ErrorCode::Parse, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* to_string(Weekday day) { return kWeekdayNames[static_cast<int>(day)]; }
const char* short_name(Weekday day) { return kWeekdayShort[static_cast<int>(day)]; }

Weekday parse_weekday(std::string_view text) {
  std::string lower;
  for (char c : text) lower += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  for (int k = 0; k < 7; ++k) {
    const std::string_view name = kWeekdayNames[k];
    if (lower == name || (lower.size() == 3 && name.substr(0, 3) == lower)) {
      return static_cast<Weekday>(k);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown weekday '" + std::string(text) + "'");
}

std::string YearMonth::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u", year, month);
  return buf;
}

// Hinnant's days_from_civil / civil_from_days.
std::int64_t days_from_civil(const Date& d) {
  const std::int64_t y = static_cast<std::int64_t>(d.year) - (d.month <= 2 ? 1 : 0);
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const std::int64_t yoe = y - era * 400;
  const std::int64_t mp = (d.month + 9) % 12;
  const std::int64_t doy = (153 * mp + 2) / 5 + d.day - 1;
  const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

Date civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const unsigned day = static_cast<unsigned>(doy - (153 * mp + 2) / 5 + 1);
  const unsigned month = static_cast<unsigned>(mp < 10 ? mp + 3 : mp - 9);
  const int year = static_cast<int>(yoe + era * 400 + (month <= 2 ? 1 : 0));
  return {year, month, day};
}

Weekday weekday_of(const Date& d) {
  const std::int64_t z = days_from_civil(d);
  // 1970-01-01 was a Thursday.
  return static_cast<Weekday>(((z % 7) + 11) % 7);
}

unsigned days_in_month(int year, unsigned month) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) throw Error(ErrorCode::InvalidArgument, "month out of range");
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  return month == 2 && leap ? 29 : kDays[month - 1];
}

Date parse_date(std::string_view text) {
  text = trim(text);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw Error(ErrorCode::Parse, "expected YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  Date d{parse_field<int>(text.substr(0, 4), "year"),
         parse_field<unsigned>(text.substr(5, 2), "month"),
         parse_field<unsigned>(text.substr(8, 2), "day")};
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month)) {
    throw Error(ErrorCode::Parse, "no such date '" + std::string(text) + "'");
  }
  return d;
}

YearMonth parse_year_month(std::string_view text) {
  text = trim(text);
  if (text.size() != 7 || text[4] != '-') {
    throw Error(ErrorCode::Parse, "expected YYYY-MM, got '" + std::string(text) + "'");
  }
  YearMonth ym{parse_field<int>(text.substr(0, 4), "year"),
               parse_field<unsigned>(text.substr(5, 2), "month")};
  if (ym.month < 1 || ym.month > 12) throw Error(ErrorCode::Parse, "month out of range");
  return ym;
}

Table build_month_table(const std::vector<DatedValue>& series, YearMonth month,
                        const CalendarSpec& spec) {
  const unsigned ndays = days_in_month(month.year, month.month);
  std::vector<double> day_value(ndays, 0.0);
  std::vector<bool> has(ndays, false);
  for (const auto& dv : series) {
    if (dv.date.year != month.year || dv.date.month != month.month) continue;
    if (!(dv.value > 0.0) || !std::isfinite(dv.value)) {
      throw Error(ErrorCode::NonPositiveValue,
                  "value for " + month.to_string() + "-" + std::to_string(dv.date.day) +
                      " must be positive",
                  std::nullopt, dv.value);
    }
    day_value[dv.date.day - 1] += dv.value;
    has[dv.date.day - 1] = true;
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (unsigned d = 0; d < ndays; ++d) {
    if (has[d]) {
      sum += day_value[d];
      ++count;
    }
  }
  if (count == 0) throw Error(ErrorCode::EmptyMonth, "no data for " + month.to_string());
  const double mean = sum / static_cast<double>(count);

  const int first = static_cast<int>(weekday_of({month.year, month.month, 1}));
  const std::size_t lead =
      static_cast<std::size_t>((first - static_cast<int>(spec.week_start) + 7) % 7);
  const std::size_t weeks = (lead + ndays + 6) / 7;

  Grid values(weeks, 7, mean);
  std::vector<bool> pad(weeks * 7, true);
  for (unsigned d = 0; d < ndays; ++d) {
    const std::size_t slot = lead + d;
    if (has[d]) {
      values.data()[slot] = day_value[d];
      pad[slot] = false;
    }
  }

  std::vector<std::string> rows(weeks), cols(7);
  for (std::size_t w = 0; w < weeks; ++w) rows[w] = "W" + std::to_string(w + 1);
  for (int k = 0; k < 7; ++k) {
    cols[static_cast<std::size_t>(k)] =
        short_name(static_cast<Weekday>((static_cast<int>(spec.week_start) + k) % 7));
  }
  Table t = make_table(std::move(values), std::move(rows), std::move(cols));
  t.labels_provided = true;
  t.pad_mask = std::move(pad);
  return t;
}

std::vector<YearMonth> months_in(const std::vector<DatedValue>& series) {
  std::map<YearMonth, bool> seen;
  for (const auto& dv : series) seen[{dv.date.year, dv.date.month}] = true;
  std::vector<YearMonth> out;
  for (const auto& [ym, _] : seen) out.push_back(ym);
  return out;
}

std::vector<DatedValue> parse_dated_series(std::string_view csv) {
  std::vector<DatedValue> out;
  const auto records = parse_csv_records(csv);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.empty() || (rec.size() == 1 && rec[0].empty())) continue;
    if (rec.size() != 2) {
      throw Error(ErrorCode::NonRectangular,
                  "line " + std::to_string(r + 1) + ": expected date,value");
    }
    if (r == 0 && (rec[0].size() != 10 || rec[0][4] != '-')) continue;  // header
    double v = 0.0;
    const auto* end = rec[1].data() + rec[1].size();
    const auto res = std::from_chars(rec[1].data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) {
      throw Error(ErrorCode::NonNumericCell, "line " + std::to_string(r + 1) + ": '" + rec[1] + "'",
                  CellRef{r, 1});
    }
    out.push_back({parse_date(rec[0]), v});
  }
  return out;
}

}  // namespace taco
