#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taco/error.hpp"

namespace taco {

enum class AxisKind { Nominal, SortedNominal, Ordinal, NonAxial };
enum class ScaleType { Ratio, Interval };

const char* to_string(AxisKind kind);
const char* to_string(ScaleType type);
AxisKind parse_axis_kind(std::string_view text);
ScaleType parse_scale_type(std::string_view text);

/// Row-major grid of doubles with fixed shape.
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Grid(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Grid from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// A validated table of strictly positive, finite values sharing one unit.
///
/// Tables are immutable once built; every transformation returns a new one.
/// `pad_mask`, when non-empty, marks filler cells (calendar days outside the
/// month, unused waffle slots). They take part in the layout but are excluded
/// from analysis metrics.
struct Table {
  Grid values;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  AxisKind row_kind = AxisKind::Ordinal;
  AxisKind col_kind = AxisKind::Ordinal;
  ScaleType scale_type = ScaleType::Ratio;
  std::optional<std::string> unit;
  bool labels_provided = false;
  std::optional<double> interval_offset;
  std::vector<bool> pad_mask;

  std::size_t rows() const noexcept { return values.rows(); }
  std::size_t cols() const noexcept { return values.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return values(i, j); }
  bool is_pad(std::size_t i, std::size_t j) const {
    return !pad_mask.empty() && pad_mask[i * cols() + j];
  }

  bool operator==(const Table&) const = default;
};

/// Builds a Table after checking every invariant. Missing labels are
/// generated as "r<i>" / "c<j>".
Table make_table(Grid values, std::vector<std::string> row_labels = {},
                 std::vector<std::string> col_labels = {},
                 AxisKind row_kind = AxisKind::Ordinal,
                 AxisKind col_kind = AxisKind::Ordinal,
                 ScaleType scale_type = ScaleType::Ratio,
                 std::optional<std::string> unit = std::nullopt);

/// Throws if `t` violates a Table invariant.
void validate(const Table& t);

// fractions are taken over every cell, pads included, so they tile the
// rectangle; sigma sums the data cells only.
struct NormalizedTable {
  Grid fractions;
  double sigma = 0.0;
  std::vector<bool> pad_mask;

  std::size_t rows() const noexcept { return fractions.rows(); }
  std::size_t cols() const noexcept { return fractions.cols(); }
};

NormalizedTable normalize(const Table& t);

/// Shifts every cell by `offset` and switches the table to interval
/// semantics. Accepts zeros, rejects negatives.
Table intervalize(const Grid& values, double offset);
Table intervalize(const Table& source_meta, const Grid& values, double offset);

Table transpose(const Table& t);

// ---------------------------------------------------------------------------
// Ingestion

struct ZeroPolicy {
  enum class Kind { Error, Intervalize } kind = Kind::Error;
  double offset = 0.0;

  static ZeroPolicy parse(std::string_view text);
  std::string to_string() const;
};

struct IngestOptions {
  bool header_row = false;
  bool header_col = false;
  std::optional<AxisKind> row_kind;
  std::optional<AxisKind> col_kind;
  std::optional<ScaleType> scale_type;
  std::optional<std::string> unit;
  ZeroPolicy zero_policy;
};

/// Parses CSV text into a Table.
Table ingest_csv(std::string_view text, const IngestOptions& options = {});

/// Parses the JSON table format. Options override fields present in the
/// document only when set.
Table ingest_json(std::string_view text, const IngestOptions& options = {});

/// Dispatches on content: a document whose first non-space byte is '{' is
/// JSON, anything else is CSV.
Table ingest(std::string_view text, const IngestOptions& options = {});

/// Splits CSV text into trimmed records. Handles double-quoted fields.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text);

}  // namespace taco
