#include "taco/waffle.hpp"

#include <charconv>
#include <cmath>

#include "taco/error.hpp"

namespace taco {

Waffle build_waffle(const std::vector<WaffleEntry>& entries, std::size_t cols,
                    std::size_t max_rows, std::size_t max_cols) {
  if (cols == 0) throw Error(ErrorCode::InvalidArgument, "waffle needs at least one column");
  std::size_t units = 0;
  double value_sum = 0.0;
  for (const auto& e : entries) {
    if (!(e.value > 0.0) || !std::isfinite(e.value)) {
      throw Error(ErrorCode::NonPositiveValue, "category '" + e.category + "' has a non-positive value",
                  std::nullopt, e.value);
    }
    units += e.count;
    value_sum += e.value * static_cast<double>(e.count);
  }
  if (units == 0) throw Error(ErrorCode::InvalidArgument, "waffle has no units");
  const std::size_t rows = (units + cols - 1) / cols;
  if (cols > max_cols || rows > max_rows) {
    throw Error(ErrorCode::WaffleOverflow,
                std::to_string(units) + " units in " + std::to_string(cols) + " columns need a " +
                    std::to_string(rows) + "x" + std::to_string(cols) + " grid, limit is " +
                    std::to_string(max_rows) + "x" + std::to_string(max_cols));
  }

  const double mean = value_sum / static_cast<double>(units);
  Grid values(rows, cols, mean);
  std::vector<bool> pad(rows * cols, true);
  Waffle w;
  w.categories.assign(rows * cols, std::string());
  std::size_t slot = 0;
  for (const auto& e : entries) {
    for (std::size_t k = 0; k < e.count; ++k, ++slot) {
      values.data()[slot] = e.value;
      pad[slot] = false;
      w.categories[slot] = e.category;
    }
  }
  w.table = make_table(std::move(values), {}, {}, AxisKind::NonAxial, AxisKind::NonAxial);
  if (slot < rows * cols) w.table.pad_mask = std::move(pad);
  return w;
}

std::vector<WaffleEntry> parse_waffle_csv(std::string_view csv) {
  std::vector<WaffleEntry> out;
  const auto records = parse_csv_records(csv);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.empty() || (rec.size() == 1 && rec[0].empty())) continue;
    if (rec.size() != 2 && rec.size() != 3) {
      throw Error(ErrorCode::NonRectangular,
                  "line " + std::to_string(r + 1) + ": expected category,count[,value]");
    }
    WaffleEntry e{rec[0], 0, 1.0};
    const auto* end = rec[1].data() + rec[1].size();
    const auto res = std::from_chars(rec[1].data(), end, e.count);
    if (res.ec != std::errc() || res.ptr != end) {
      if (r == 0 && out.empty()) continue;  // header
      throw Error(ErrorCode::NonNumericCell,
                  "line " + std::to_string(r + 1) + ": count '" + rec[1] + "' is not a whole number",
                  CellRef{r, 1});
    }
    if (rec.size() == 3) {
      const auto* vend = rec[2].data() + rec[2].size();
      const auto vres = std::from_chars(rec[2].data(), vend, e.value);
      if (vres.ec != std::errc() || vres.ptr != vend) {
        throw Error(ErrorCode::NonNumericCell, "line " + std::to_string(r + 1) + ": '" + rec[2] + "'",
                    CellRef{r, 2});
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace taco
