#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "taco/table.hpp"

namespace taco {

struct WaffleEntry {
  std::string category;
  std::size_t count;   // number of unit cells
  double value = 1.0;  // value carried by each of its cells
};

struct Waffle {
  Table table;                         // NonAxial on both axes
  std::vector<std::string> categories;  // per cell, row-major; empty for pad cells
};

/// Lays the units out row-major into a `cols`-wide grid. A partial last row
/// is completed with pad cells holding the mean unit value. Throws
/// WaffleOverflow when the grid would exceed `max_rows` rows or `cols`
/// exceeds `max_cols`, InvalidArgument for cols == 0 or no units.
Waffle build_waffle(const std::vector<WaffleEntry>& entries, std::size_t cols,
                    std::size_t max_rows, std::size_t max_cols);

/// Parses "category,count[,value]" CSV; a non-numeric count on the first
/// line is taken as a header.
std::vector<WaffleEntry> parse_waffle_csv(std::string_view csv);

}  // namespace taco
