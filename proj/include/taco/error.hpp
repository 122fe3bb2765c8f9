#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace taco {

enum class ErrorCode {
  NonRectangular,
  NonNumericCell,
  NonPositiveValue,
  NegativeValue,
  EmptyTable,
  InvalidArgument,
  IndexOutOfRange,
  ShapeMismatch,
  DegenerateTarget,
  AlphaPrecondition,
  EmptyMonth,
  WaffleOverflow,
  Io,
  Parse,
};

const char* to_string(ErrorCode code);

struct CellRef {
  std::size_t row = 0;
  std::size_t col = 0;
};

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<CellRef> cell = std::nullopt,
        std::optional<double> value = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code), cell_(cell), value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<CellRef>& cell() const noexcept { return cell_; }
  const std::optional<double>& value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::optional<CellRef> cell_;
  std::optional<double> value_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonRectangular: return "NonRectangular";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DegenerateTarget: return "DegenerateTarget";
    case ErrorCode::AlphaPrecondition: return "AlphaPrecondition";
    case ErrorCode::EmptyMonth: return "EmptyMonth";
    case ErrorCode::WaffleOverflow: return "WaffleOverflow";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace taco
