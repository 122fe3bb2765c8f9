#include "taco/table.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include <json.hpp>

namespace taco {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](char c) { return c == '-' || c == '_' || c == ' '; }),
            out.end());
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string> default_labels(char prefix, std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

void check_cell(double v, std::size_t i, std::size_t j) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonNumericCell, "non-finite value at (" + std::to_string(i) + ", " +
                                               std::to_string(j) + ")",
                CellRef{i, j}, v);
  }
  if (v <= 0.0) {
    throw Error(ErrorCode::NonPositiveValue,
                "value " + std::to_string(v) + " at (" + std::to_string(i) + ", " +
                    std::to_string(j) + ") is not strictly positive",
                CellRef{i, j}, v);
  }
}

// Applies the zero policy to a raw grid (which may contain zeros) and
// produces a validated table carrying the metadata in `meta`.
Table finish_ingest(Grid raw, Table meta, const IngestOptions& options) {
  if (options.zero_policy.kind == ZeroPolicy::Kind::Intervalize) {
    return intervalize(meta, raw, options.zero_policy.offset);
  }
  for (std::size_t i = 0; i < raw.rows(); ++i)
    for (std::size_t j = 0; j < raw.cols(); ++j) check_cell(raw(i, j), i, j);
  meta.values = std::move(raw);
  validate(meta);
  return meta;
}

}  // namespace

const char* to_string(AxisKind kind) {
  switch (kind) {
    case AxisKind::Nominal: return "nominal";
    case AxisKind::SortedNominal: return "sorted-nominal";
    case AxisKind::Ordinal: return "ordinal";
    case AxisKind::NonAxial: return "non-axial";
  }
  return "ordinal";
}

const char* to_string(ScaleType type) {
  return type == ScaleType::Ratio ? "ratio" : "interval";
}

AxisKind parse_axis_kind(std::string_view text) {
  const auto s = lower(text);
  if (s == "nominal") return AxisKind::Nominal;
  if (s == "sortednominal") return AxisKind::SortedNominal;
  if (s == "ordinal") return AxisKind::Ordinal;
  if (s == "nonaxial") return AxisKind::NonAxial;
  throw Error(ErrorCode::InvalidArgument, "unknown axis kind '" + std::string(text) + "'");
}

ScaleType parse_scale_type(std::string_view text) {
  const auto s = lower(text);
  if (s == "ratio") return ScaleType::Ratio;
  if (s == "interval") return ScaleType::Interval;
  throw Error(ErrorCode::InvalidArgument, "unknown scale type '" + std::string(text) + "'");
}

Grid::Grid(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::ShapeMismatch, "grid data size does not match shape");
  }
}

Grid Grid::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) return Grid();
  const std::size_t n = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw Error(ErrorCode::NonRectangular, "ragged rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Grid(rows.size(), n, std::move(data));
}

void validate(const Table& t) {
  if (t.values.empty()) throw Error(ErrorCode::EmptyTable, "table has no cells");
  if (t.row_labels.size() != t.rows() || t.col_labels.size() != t.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "label count does not match table shape");
  }
  if (!t.pad_mask.empty() && t.pad_mask.size() != t.values.size()) {
    throw Error(ErrorCode::ShapeMismatch, "pad mask does not match table shape");
  }
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) check_cell(t(i, j), i, j);
}

Table make_table(Grid values, std::vector<std::string> row_labels,
                 std::vector<std::string> col_labels, AxisKind row_kind, AxisKind col_kind,
                 ScaleType scale_type, std::optional<std::string> unit) {
  Table t;
  t.labels_provided = !row_labels.empty() || !col_labels.empty();
  if (row_labels.empty()) row_labels = default_labels('r', values.rows());
  if (col_labels.empty()) col_labels = default_labels('c', values.cols());
  t.values = std::move(values);
  t.row_labels = std::move(row_labels);
  t.col_labels = std::move(col_labels);
  t.row_kind = row_kind;
  t.col_kind = col_kind;
  t.scale_type = scale_type;
  t.unit = std::move(unit);
  validate(t);
  return t;
}

NormalizedTable normalize(const Table& t) {
  validate(t);
  NormalizedTable nt;
  // Row-major summation order keeps results reproducible. Pad cells share the
  // rectangle but do not count towards sigma.
  double total = 0.0, sigma = 0.0;
  for (std::size_t k = 0; k < t.values.size(); ++k) {
    total += t.values.data()[k];
    if (t.pad_mask.empty() || !t.pad_mask[k]) sigma += t.values.data()[k];
  }
  nt.sigma = sigma;
  nt.fractions = Grid(t.rows(), t.cols());
  for (std::size_t k = 0; k < t.values.size(); ++k)
    nt.fractions.data()[k] = t.values.data()[k] / total;
  nt.pad_mask = t.pad_mask;
  return nt;
}

Table intervalize(const Table& meta, const Grid& values, double offset) {
  if (!(offset > 0.0) || !std::isfinite(offset)) {
    throw Error(ErrorCode::InvalidArgument, "interval offset must be positive and finite");
  }
  if (values.empty()) throw Error(ErrorCode::EmptyTable, "table has no cells");
  Grid shifted(values.rows(), values.cols());
  for (std::size_t i = 0; i < values.rows(); ++i) {
    for (std::size_t j = 0; j < values.cols(); ++j) {
      const double v = values(i, j);
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonNumericCell, "non-finite value", CellRef{i, j}, v);
      }
      if (v < 0.0) {
        throw Error(ErrorCode::NegativeValue,
                    "negative value " + std::to_string(v) + " at (" + std::to_string(i) +
                        ", " + std::to_string(j) + ") cannot be offset into a valid table",
                    CellRef{i, j}, v);
      }
      shifted(i, j) = v + offset;
    }
  }
  Table t = meta;
  if (t.row_labels.size() != values.rows()) t.row_labels = default_labels('r', values.rows());
  if (t.col_labels.size() != values.cols()) t.col_labels = default_labels('c', values.cols());
  t.values = std::move(shifted);
  t.scale_type = ScaleType::Interval;
  t.interval_offset = offset + t.interval_offset.value_or(0.0);
  validate(t);
  return t;
}

Table intervalize(const Grid& values, double offset) {
  return intervalize(Table{}, values, offset);
}

Table transpose(const Table& t) {
  Table out;
  out.values = Grid(t.cols(), t.rows());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) out.values(j, i) = t.values(i, j);
  if (!t.pad_mask.empty()) {
    out.pad_mask.assign(t.pad_mask.size(), false);
    for (std::size_t i = 0; i < t.rows(); ++i)
      for (std::size_t j = 0; j < t.cols(); ++j)
        out.pad_mask[j * t.rows() + i] = t.pad_mask[i * t.cols() + j];
  }
  out.row_labels = t.col_labels;
  out.col_labels = t.row_labels;
  out.row_kind = t.col_kind;
  out.col_kind = t.row_kind;
  out.scale_type = t.scale_type;
  out.unit = t.unit;
  out.labels_provided = t.labels_provided;
  out.interval_offset = t.interval_offset;
  return out;
}

ZeroPolicy ZeroPolicy::parse(std::string_view text) {
  const auto s = trim(text);
  if (s == "error") return {};
  constexpr std::string_view prefix = "intervalize:";
  if (s.substr(0, prefix.size()) == prefix) {
    const auto v = parse_number(s.substr(prefix.size()));
    if (!v || !(*v > 0.0) || !std::isfinite(*v)) {
      throw Error(ErrorCode::InvalidArgument, "intervalize offset must be a positive number");
    }
    return {Kind::Intervalize, *v};
  }
  throw Error(ErrorCode::InvalidArgument,
              "zero policy must be 'error' or 'intervalize:<offset>', got '" + std::string(s) +
                  "'");
}

std::string ZeroPolicy::to_string() const {
  if (kind == Kind::Error) return "error";
  nlohmann::json j = offset;
  return "intervalize:" + j.dump();
}

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  auto end_field = [&] {
    record.emplace_back(trim(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record.front().empty();
    if (!blank) records.push_back(std::move(record));
    record.clear();
    any = false;
  };
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (in_quotes) {
      if (c == '"') {
        if (k + 1 < text.size() && text[k + 1] == '"') {
          field.push_back('"');
          ++k;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        // Quotes only open at the start of a field; elsewhere they are text.
        if (trim(field).empty()) {
          field.clear();
          in_quotes = true;
        } else {
          field.push_back(c);
        }
        any = true;
        break;
      case ',': end_field(); any = true; break;
      case '\r': break;
      case '\n': end_record(); break;
      default: field.push_back(c); any = true; break;
    }
  }
  if (any || !field.empty() || !record.empty()) end_record();
  return records;
}

Table ingest_csv(std::string_view text, const IngestOptions& options) {
  auto records = parse_csv_records(text);
  if (records.empty()) throw Error(ErrorCode::EmptyTable, "no rows in input");

  std::vector<std::string> col_labels;
  std::size_t first = 0;
  if (options.header_row) {
    col_labels = records.front();
    first = 1;
    if (options.header_col && !col_labels.empty()) col_labels.erase(col_labels.begin());
  }
  if (first >= records.size()) throw Error(ErrorCode::EmptyTable, "no data rows in input");

  const std::size_t width = records[first].size();
  std::vector<std::string> row_labels;
  std::vector<double> data;
  for (std::size_t r = first; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != width) {
      throw Error(ErrorCode::NonRectangular, "row " + std::to_string(r - first) + " has " +
                                                 std::to_string(rec.size()) + " fields, expected " +
                                                 std::to_string(width));
    }
    std::size_t c0 = 0;
    if (options.header_col) {
      row_labels.push_back(rec.front());
      c0 = 1;
    }
    for (std::size_t c = c0; c < rec.size(); ++c) {
      const auto v = parse_number(rec[c]);
      if (!v) {
        throw Error(ErrorCode::NonNumericCell,
                    "cell (" + std::to_string(r - first) + ", " + std::to_string(c - c0) +
                        ") is not a number: '" + rec[c] + "'",
                    CellRef{r - first, c - c0});
      }
      data.push_back(*v);
    }
  }
  const std::size_t m = records.size() - first;
  const std::size_t n = width - (options.header_col ? 1 : 0);
  if (m == 0 || n == 0) throw Error(ErrorCode::EmptyTable, "table has no cells");
  if (options.header_row && col_labels.size() != n) {
    throw Error(ErrorCode::NonRectangular, "header row width does not match data");
  }

  Table meta;
  meta.labels_provided = options.header_row || options.header_col;
  meta.row_labels = row_labels.empty() ? default_labels('r', m) : std::move(row_labels);
  meta.col_labels = col_labels.empty() ? default_labels('c', n) : std::move(col_labels);
  meta.row_kind = options.row_kind.value_or(AxisKind::Ordinal);
  meta.col_kind = options.col_kind.value_or(AxisKind::Ordinal);
  meta.scale_type = options.scale_type.value_or(ScaleType::Ratio);
  meta.unit = options.unit;
  return finish_ingest(Grid(m, n, std::move(data)), std::move(meta), options);
}

Table ingest_json(std::string_view text, const IngestOptions& options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_array()) {
    throw Error(ErrorCode::Parse, "table JSON needs a 'values' array");
  }
  const auto& rows = doc["values"];
  if (rows.empty()) throw Error(ErrorCode::EmptyTable, "no rows in input");
  const std::size_t m = rows.size();
  const std::size_t n = rows.front().is_array() ? rows.front().size() : 0;
  std::vector<double> data;
  for (std::size_t i = 0; i < m; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw Error(ErrorCode::NonRectangular, "row " + std::to_string(i) + " is ragged");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!rows[i][j].is_number()) {
        throw Error(ErrorCode::NonNumericCell, "cell is not a number", CellRef{i, j});
      }
      data.push_back(rows[i][j].get<double>());
    }
  }
  if (n == 0) throw Error(ErrorCode::EmptyTable, "table has no cells");

  Table meta;
  auto labels = [&](const char* key, char prefix, std::size_t count) {
    if (doc.contains(key)) {
      meta.labels_provided = true;
      auto v = doc[key].get<std::vector<std::string>>();
      if (v.size() != count) {
        throw Error(ErrorCode::ShapeMismatch, std::string(key) + " length does not match table");
      }
      return v;
    }
    return default_labels(prefix, count);
  };
  meta.row_labels = labels("rowLabels", 'r', m);
  meta.col_labels = labels("colLabels", 'c', n);
  auto text_field = [&](const char* key) -> std::optional<std::string> {
    if (doc.contains(key) && doc[key].is_string()) return doc[key].get<std::string>();
    return std::nullopt;
  };
  meta.row_kind = options.row_kind
                      ? *options.row_kind
                      : parse_axis_kind(text_field("rowKind").value_or("ordinal"));
  meta.col_kind = options.col_kind
                      ? *options.col_kind
                      : parse_axis_kind(text_field("colKind").value_or("ordinal"));
  meta.scale_type = options.scale_type
                        ? *options.scale_type
                        : parse_scale_type(text_field("scaleType").value_or("ratio"));
  meta.unit = options.unit ? options.unit : text_field("unit");
  return finish_ingest(Grid(m, n, std::move(data)), std::move(meta), options);
}

Table ingest(std::string_view text, const IngestOptions& options) {
  const auto t = trim(text);
  if (!t.empty() && t.front() == '{') return ingest_json(text, options);
  return ingest_csv(text, options);
}

}  // namespace taco
