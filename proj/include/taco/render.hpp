#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taco/calendar.hpp"
#include "taco/mesh.hpp"
#include "taco/table.hpp"

namespace taco {

struct ColorStop {
  double position;  // in [0, 1]
  unsigned char r, g, b;
};

enum class LabelMode { None, Values, AxisLabels, Both };

const char* to_string(LabelMode mode);
LabelMode parse_label_mode(std::string_view text);

struct RenderSpec {
  // Unset means no color encoding (cells are filled white).
  std::optional<std::string> color_ramp;
  LabelMode label_mode = LabelMode::None;
  double stroke_width = 1.0;
  // Overrides the named ramp's stops when non-empty.
  std::vector<ColorStop> palette;
  double margin = 10.0;

  void validate() const;
};

/// Stops for a named sequential ramp ("blues", "greys", "viridis").
std::vector<ColorStop> named_ramp(std::string_view name);

/// Piecewise-linear interpolation through `stops`, t clamped to [0, 1].
/// Returns "#rrggbb".
std::string ramp_color(const std::vector<ColorStop>& stops, double t);

/// Ramp position per cell: min-max rescaling of the normalized values over
/// non-pad cells (0.5 everywhere when they are all equal). Pad cells get NaN.
std::vector<double> ramp_positions(const Table& table);

/// Shortest round-trip decimal form, as used for every SVG coordinate.
std::string format_number(double v);

/// One polygon per cell (row-major, ids "cell-i-j"), optional labels.
/// Byte-identical output for identical inputs. Throws ShapeMismatch.
std::string render_svg(const Mesh& mesh, const Table& table, const RenderSpec& spec);

struct MonthLayout {
  YearMonth month;
  Mesh mesh;
  Table table;
};

/// Places each month's rendering into the calendar spec's arrangement grid
/// (row-major, equal tiles) under a title; groups have ids "month-YYYY-MM".
std::string compose_months(const std::vector<MonthLayout>& months, const CalendarSpec& calendar,
                           const RenderSpec& spec);

}  // namespace taco
