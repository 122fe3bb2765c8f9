#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "taco/algebra.hpp"
#include "taco/table.hpp"

namespace taco {

enum class RangeState { Pass, Warn, Fail };

struct RangeStatus {
  RangeState state = RangeState::Pass;
  double min_fraction = 0.0;
  double threshold = 0.0;    // (w h)^-1
  double value_ratio = 0.0;  // max / min over data cells
};

enum class CardinalityState { Pass, Fail };

struct CardinalityStatus {
  CardinalityState state = CardinalityState::Pass;
  std::optional<Axis> axis;  // set on Fail
  std::size_t count = 0;
  std::size_t limit = 0;
};

struct AxisWarning {
  std::string rule;
  std::string axis;  // "rows" or "cols"
  std::string message;
};

struct ScaleNote {
  std::string rule;
  std::string message;
};

enum class Task {
  RetrieveValue,
  ComputeDerivedValue,
  FindExtremum,
  Sort,
  DetermineRange,
  CharacterizeDistribution,
  Correlate,
  FindAnomalies,
  Cluster,
  Filter,
};
inline constexpr std::size_t kTaskCount = 10;

enum class Suitability { Supported, Conditional, Confuser };

struct TaskReason {
  std::string rule;
  std::string text;
};

struct TaskStatus {
  Suitability status = Suitability::Supported;
  std::vector<TaskReason> reasons;
};

const char* to_string(RangeState s);
const char* to_string(CardinalityState s);
const char* to_string(Task t);
const char* to_string(Suitability s);

struct GuidanceOptions {
  double range_warn_ratio = 1e3;
  double narrow_ratio = 1.2;  // max/min below this counts as a narrow distribution
};

struct GuidanceReport {
  RangeStatus range;
  CardinalityStatus cardinality;
  std::vector<AxisWarning> axis_warnings;
  std::vector<ScaleNote> scale_notes;
  std::array<TaskStatus, kTaskCount> tasks;  // indexed by Task

  bool has_fail() const;
};

/// Fail when the smallest data fraction is below (w h)^-1, Warn when the
/// max/min value ratio exceeds the advisory bound, else Pass.
RangeStatus check_range(const NormalizedTable& nt, double width, double height,
                        const GuidanceOptions& options = {});

/// Fail when rows exceed the height or columns exceed the width in pixels.
CardinalityStatus check_cardinality(const Table& t, double width, double height);

std::vector<AxisWarning> axis_guidance(const Table& t);

std::vector<ScaleNote> scale_guidance(const Table& t);

std::array<TaskStatus, kTaskCount> task_suitability(const Table& t, bool has_labels, double width,
                                                    double height,
                                                    const GuidanceOptions& options = {});

GuidanceReport guide(const Table& t, bool has_labels, double width, double height,
                     const GuidanceOptions& options = {});

/// Rule id -> the passage the rule encodes. Throws InvalidArgument for an
/// unknown id.
const char* rule_anchor(const std::string& rule);
std::vector<std::string> rule_ids();

/// One line per warning, then a ten-row task table.
std::string render_text(const GuidanceReport& report);

}  // namespace taco
