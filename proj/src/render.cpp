#include "taco/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "taco/error.hpp"

namespace taco {

namespace {

constexpr const char* kPadFill = "#e8e8e8";
constexpr const char* kPlainFill = "#ffffff";
constexpr double kTitleHeight = 24.0;

std::string escape_xml(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string format_value(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

// Relative luminance threshold for switching label color on dark fills.
bool is_dark(const std::string& hex) {
  if (hex.size() != 7) return false;
  auto channel = [&](int k) { return std::stoi(hex.substr(1 + 2 * k, 2), nullptr, 16); };
  return 0.299 * channel(0) + 0.587 * channel(1) + 0.114 * channel(2) < 128.0;
}

void append_cells(std::string& out, const Mesh& mesh, const Table& table, const RenderSpec& spec,
                  const std::string& indent) {
  std::vector<ColorStop> stops;
  if (!spec.palette.empty()) {
    stops = spec.palette;
  } else if (spec.color_ramp) {
    stops = named_ramp(*spec.color_ramp);
  }
  const std::vector<double> pos = ramp_positions(table);
  const std::string stroke = format_number(spec.stroke_width);

  std::vector<std::string> fills(mesh.rows() * mesh.cols());
  for (std::size_t i = 0; i < mesh.rows(); ++i) {
    for (std::size_t j = 0; j < mesh.cols(); ++j) {
      const std::size_t c = i * mesh.cols() + j;
      std::string& fill = fills[c];
      if (table.is_pad(i, j)) {
        fill = kPadFill;
      } else if (!stops.empty()) {
        fill = ramp_color(stops, pos[c]);
      } else {
        fill = kPlainFill;
      }
      const auto q = cell_quad(mesh, i, j);
      out += indent + "<polygon id=\"cell-" + std::to_string(i) + "-" + std::to_string(j) + "\"";
      if (table.is_pad(i, j)) out += " class=\"pad\"";
      out += " points=\"";
      const Point pts[4] = {q.p0, q.p1, q.p2, q.p3};
      for (int k = 0; k < 4; ++k) {
        if (k) out += ' ';
        out += format_number(pts[k].x) + "," + format_number(pts[k].y);
      }
      out += "\" fill=\"" + fill + "\" stroke=\"#333333\" stroke-width=\"" + stroke + "\"/>\n";
    }
  }

  if (spec.label_mode == LabelMode::None) return;
  for (std::size_t i = 0; i < mesh.rows(); ++i) {
    for (std::size_t j = 0; j < mesh.cols(); ++j) {
      if (table.is_pad(i, j)) continue;
      const Point c = cell_centroid(mesh, i, j);
      const std::string color = is_dark(fills[i * mesh.cols() + j]) ? "#ffffff" : "#000000";
      out += indent + "<text id=\"label-" + std::to_string(i) + "-" + std::to_string(j) +
             "\" x=\"" + format_number(c.x) + "\" y=\"" + format_number(c.y) +
             "\" text-anchor=\"middle\" dominant-baseline=\"middle\" font-size=\"10\" fill=\"" +
             color + "\">";
      const std::string value = escape_xml(format_value(table(i, j)));
      const std::string axes = escape_xml(table.row_labels[i] + "/" + table.col_labels[j]);
      switch (spec.label_mode) {
        case LabelMode::Values: out += value; break;
        case LabelMode::AxisLabels: out += axes; break;
        case LabelMode::Both:
          out += "<tspan x=\"" + format_number(c.x) + "\" dy=\"-0.6em\">" + axes +
                 "</tspan><tspan x=\"" + format_number(c.x) + "\" dy=\"1.2em\">" + value +
                 "</tspan>";
          break;
        case LabelMode::None: break;
      }
      out += "</text>\n";
    }
  }
}

void check_shapes(const Mesh& mesh, const Table& table) {
  if (mesh.rows() != table.rows() || mesh.cols() != table.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "mesh is " + std::to_string(mesh.rows()) + "x" +
                                              std::to_string(mesh.cols()) + ", table is " +
                                              std::to_string(table.rows()) + "x" +
                                              std::to_string(table.cols()));
  }
}

std::string svg_open(double width, double height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         format_number(width) + "\" height=\"" + format_number(height) + "\" viewBox=\"0 0 " +
         format_number(width) + " " + format_number(height) + "\">\n";
}

}  // namespace

const char* to_string(LabelMode mode) {
  switch (mode) {
    case LabelMode::None: return "none";
    case LabelMode::Values: return "values";
    case LabelMode::AxisLabels: return "axis";
    case LabelMode::Both: return "both";
  }
  return "none";
}

LabelMode parse_label_mode(std::string_view text) {
  if (text == "none") return LabelMode::None;
  if (text == "values") return LabelMode::Values;
  if (text == "axis" || text == "axis-labels") return LabelMode::AxisLabels;
  if (text == "both") return LabelMode::Both;
  throw Error(ErrorCode::InvalidArgument, "unknown label mode '" + std::string(text) + "'");
}

void RenderSpec::validate() const {
  if (!(stroke_width >= 0.0) || !std::isfinite(stroke_width)) {
    throw Error(ErrorCode::InvalidArgument, "stroke width must be non-negative");
  }
  if (!(margin >= 0.0) || !std::isfinite(margin)) {
    throw Error(ErrorCode::InvalidArgument, "margin must be non-negative");
  }
  if (color_ramp && palette.empty()) named_ramp(*color_ramp);
  if (!palette.empty()) {
    if (palette.size() < 2) throw Error(ErrorCode::InvalidArgument, "palette needs two stops");
    if (palette.front().position != 0.0 || palette.back().position != 1.0) {
      throw Error(ErrorCode::InvalidArgument, "palette must span [0, 1]");
    }
    for (std::size_t k = 1; k < palette.size(); ++k) {
      if (!(palette[k].position > palette[k - 1].position)) {
        throw Error(ErrorCode::InvalidArgument, "palette stops must be increasing");
      }
    }
  }
}

std::vector<ColorStop> named_ramp(std::string_view name) {
  if (name == "blues") {
    return {{0.0, 0xf7, 0xfb, 0xff}, {0.5, 0x6b, 0xae, 0xd6}, {1.0, 0x08, 0x30, 0x6b}};
  }
  if (name == "greys") return {{0.0, 0xf0, 0xf0, 0xf0}, {1.0, 0x25, 0x25, 0x25}};
  if (name == "viridis") {
    return {{0.0, 0x44, 0x01, 0x54}, {0.25, 0x3b, 0x52, 0x8b}, {0.5, 0x21, 0x91, 0x8c},
            {0.75, 0x5e, 0xc9, 0x62}, {1.0, 0xfd, 0xe7, 0x25}};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown color ramp '" + std::string(name) + "'");
}

std::string ramp_color(const std::vector<ColorStop>& stops, double t) {
  t = std::clamp(t, 0.0, 1.0);
  std::size_t k = 1;
  while (k + 1 < stops.size() && stops[k].position < t) ++k;
  const ColorStop& a = stops[k - 1];
  const ColorStop& b = stops[k];
  const double f = (t - a.position) / (b.position - a.position);
  auto mix = [f](unsigned char x, unsigned char y) {
    return static_cast<int>(std::lround(x + (static_cast<double>(y) - x) * f));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b));
  return buf;
}

std::vector<double> ramp_positions(const Table& table) {
  const auto& v = table.values.data();
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (!table.pad_mask.empty() && table.pad_mask[c]) continue;
    lo = std::min(lo, v[c]);
    hi = std::max(hi, v[c]);
  }
  std::vector<double> pos(v.size(), NAN);
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (!table.pad_mask.empty() && table.pad_mask[c]) continue;
    pos[c] = hi > lo ? (v[c] - lo) / (hi - lo) : 0.5;
  }
  return pos;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string render_svg(const Mesh& mesh, const Table& table, const RenderSpec& spec) {
  check_shapes(mesh, table);
  spec.validate();
  std::string out = svg_open(mesh.width() + 2 * spec.margin, mesh.height() + 2 * spec.margin);
  out += "  <g id=\"cartogram\" transform=\"translate(" + format_number(spec.margin) + "," +
         format_number(spec.margin) + ")\">\n";
  append_cells(out, mesh, table, spec, "    ");
  out += "  </g>\n</svg>\n";
  return out;
}

std::string compose_months(const std::vector<MonthLayout>& months, const CalendarSpec& calendar,
                           const RenderSpec& spec) {
  if (months.empty()) throw Error(ErrorCode::InvalidArgument, "no months to compose");
  spec.validate();
  if (calendar.arrangement_rows == 0 || calendar.arrangement_cols == 0) {
    throw Error(ErrorCode::InvalidArgument, "month arrangement must be non-empty");
  }
  for (const auto& m : months) check_shapes(m.mesh, m.table);

  double tile_w = 0.0, tile_h = 0.0;
  for (const auto& m : months) {
    tile_w = std::max(tile_w, m.mesh.width() + 2 * spec.margin);
    tile_h = std::max(tile_h, m.mesh.height() + 2 * spec.margin + kTitleHeight);
  }
  const std::size_t cols = std::min(calendar.arrangement_cols, months.size());
  // Grow the grid downwards when there are more months than slots.
  const std::size_t rows = (months.size() + calendar.arrangement_cols - 1) / calendar.arrangement_cols;

  std::string out = svg_open(tile_w * static_cast<double>(cols), tile_h * static_cast<double>(rows));
  for (std::size_t k = 0; k < months.size(); ++k) {
    const auto& m = months[k];
    const double ox = tile_w * static_cast<double>(k % calendar.arrangement_cols);
    const double oy = tile_h * static_cast<double>(k / calendar.arrangement_cols);
    const std::string id = m.month.to_string();
    out += "  <g id=\"month-" + id + "\" transform=\"translate(" + format_number(ox) + "," +
           format_number(oy) + ")\">\n";
    out += "    <text class=\"title\" x=\"" + format_number(spec.margin) + "\" y=\"" +
           format_number(kTitleHeight - 6.0) + "\" font-size=\"14\">" + id + "</text>\n";
    out += "    <g transform=\"translate(" + format_number(spec.margin) + "," +
           format_number(spec.margin + kTitleHeight) + ")\">\n";
    append_cells(out, m.mesh, m.table, spec, "      ");
    out += "    </g>\n  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace taco
