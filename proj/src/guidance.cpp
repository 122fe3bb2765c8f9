#include "taco/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "taco/error.hpp"

namespace taco {

namespace {

struct Rule {
  const char* id;
  const char* anchor;
};

constexpr Rule kRules[] = {
    {"retrieve-value.labels", "if not labeled appropriately"},
    {"derived-value.relative-only", "absolute magnitudes will possess a Confuser"},
    {"extremum.area-order", "pliable to Sort and Find Extremum"},
    {"determine-range.normalized", "a Confuser for Determine Range"},
    {"distribution.partition-phase", "in-phase with the partitions"},
    {"correlate.spurious", "suggest non-existent correlations"},
    {"anomalies.false-positives", "can cause false positives"},
    {"cluster-filter.narrow", "Confuser when the distribution is narrow"},
    {"range.subpixel", "minimum legible area for a cell to be 1 pixel"},
    {"range.advisory", "use a range smaller than 10^3"},
    {"axis.nominal-permutation", "only tables with non-nominal orderings should be used"},
    {"axis.sorted-nominal", "arbitrariness of choice of sorting algorithm"},
    {"axis.non-axial", "non-reflective of the data"},
    {"scale.interval-unit", "merely a re-representation"},
    {"scale.interval-offset", "treated these counts as interval and offset them"},
};

void downgrade(TaskStatus& s) {
  if (s.status == Suitability::Supported) {
    s.status = Suitability::Conditional;
  } else {
    s.status = Suitability::Confuser;
  }
}

TaskStatus status(Suitability s, std::vector<TaskReason> reasons = {}) {
  return TaskStatus{s, std::move(reasons)};
}

std::pair<double, double> data_extremes(const Table& t) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t k = 0; k < t.values.size(); ++k) {
    if (!t.pad_mask.empty() && t.pad_mask[k]) continue;
    lo = std::min(lo, t.values.data()[k]);
    hi = std::max(hi, t.values.data()[k]);
  }
  return {lo, hi};
}

}  // namespace

const char* to_string(RangeState s) {
  switch (s) {
    case RangeState::Pass: return "Pass";
    case RangeState::Warn: return "Warn";
    case RangeState::Fail: return "Fail";
  }
  return "Unknown";
}

const char* to_string(CardinalityState s) { return s == CardinalityState::Pass ? "Pass" : "Fail"; }

const char* to_string(Task t) {
  switch (t) {
    case Task::RetrieveValue: return "Retrieve Value";
    case Task::ComputeDerivedValue: return "Compute Derived Value";
    case Task::FindExtremum: return "Find Extremum";
    case Task::Sort: return "Sort";
    case Task::DetermineRange: return "Determine Range";
    case Task::CharacterizeDistribution: return "Characterize Distribution";
    case Task::Correlate: return "Correlate";
    case Task::FindAnomalies: return "Find Anomalies";
    case Task::Cluster: return "Cluster";
    case Task::Filter: return "Filter";
  }
  return "Unknown";
}

const char* to_string(Suitability s) {
  switch (s) {
    case Suitability::Supported: return "Supported";
    case Suitability::Conditional: return "Conditional";
    case Suitability::Confuser: return "Confuser";
  }
  return "Unknown";
}

bool GuidanceReport::has_fail() const {
  return range.state == RangeState::Fail || cardinality.state == CardinalityState::Fail;
}

const char* rule_anchor(const std::string& rule) {
  for (const auto& r : kRules) {
    if (rule == r.id) return r.anchor;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown rule '" + rule + "'");
}

std::vector<std::string> rule_ids() {
  std::vector<std::string> out;
  for (const auto& r : kRules) out.emplace_back(r.id);
  return out;
}

RangeStatus check_range(const NormalizedTable& nt, double width, double height,
                        const GuidanceOptions& options) {
  RangeStatus r;
  r.threshold = 1.0 / (width * height);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t k = 0; k < nt.fractions.size(); ++k) {
    if (!nt.pad_mask.empty() && nt.pad_mask[k]) continue;
    lo = std::min(lo, nt.fractions.data()[k]);
    hi = std::max(hi, nt.fractions.data()[k]);
  }
  r.min_fraction = lo;
  r.value_ratio = hi / lo;
  if (lo < r.threshold) {
    r.state = RangeState::Fail;
  } else if (r.value_ratio > options.range_warn_ratio) {
    r.state = RangeState::Warn;
  }
  return r;
}

CardinalityStatus check_cardinality(const Table& t, double width, double height) {
  CardinalityStatus c;
  // Pixel bounds; a fractional dimension admits only whole rows/columns.
  const auto row_limit = static_cast<std::size_t>(std::floor(height));
  const auto col_limit = static_cast<std::size_t>(std::floor(width));
  if (t.rows() > row_limit) {
    c.state = CardinalityState::Fail;
    c.axis = Axis::Rows;
    c.count = t.rows();
    c.limit = row_limit;
  } else if (t.cols() > col_limit) {
    c.state = CardinalityState::Fail;
    c.axis = Axis::Cols;
    c.count = t.cols();
    c.limit = col_limit;
  }
  return c;
}

std::vector<AxisWarning> axis_guidance(const Table& t) {
  std::vector<AxisWarning> out;
  const std::pair<const char*, AxisKind> axes[] = {{"rows", t.row_kind}, {"cols", t.col_kind}};
  for (const auto& [name, kind] : axes) {
    switch (kind) {
      case AxisKind::Nominal:
        out.push_back({"axis.nominal-permutation", name,
                       std::string("nominal ") + name +
                           ": any reordering is equally valid yet reshapes the layout (permutation "
                           "Hallucinator)"});
        break;
      case AxisKind::SortedNominal:
        out.push_back({"axis.sorted-nominal", name,
                       std::string("sorted nominal ") + name +
                           ": the layout depends on an arbitrary choice of sort key"});
        break;
      case AxisKind::NonAxial:
        out.push_back({"axis.non-axial", name,
                       std::string("non-axial ") + name +
                           ": cell placement is an arbitrary arrangement and is non-reflective of "
                           "the data"});
        break;
      case AxisKind::Ordinal: break;
    }
  }
  return out;
}

std::vector<ScaleNote> scale_guidance(const Table& t) {
  std::vector<ScaleNote> out;
  if (t.scale_type == ScaleType::Interval) {
    out.push_back({"scale.interval-unit",
                   "interval data: the choice of unit or zero point is a re-representation, yet it "
                   "changes cell areas (Hallucinator) and can hide real differences (Confuser)"});
  }
  if (t.interval_offset) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", *t.interval_offset);
    out.push_back({"scale.interval-offset",
                   std::string("values were offset by ") + buf + " to admit zeros; areas encode the shifted values"});
  }
  return out;
}

std::array<TaskStatus, kTaskCount> task_suitability(const Table& t, bool has_labels, double width,
                                                    double height, const GuidanceOptions& options) {
  validate(t);
  std::array<TaskStatus, kTaskCount> tasks;
  auto at = [&](Task task) -> TaskStatus& { return tasks[static_cast<std::size_t>(task)]; };

  at(Task::RetrieveValue) = status(
      Suitability::Conditional,
      {{"retrieve-value.labels", "exact values need labels or a secondary encoding"}});
  at(Task::ComputeDerivedValue) = status(
      Suitability::Conditional,
      {{"derived-value.relative-only", "only relative statistics survive normalization"}});
  at(Task::FindExtremum) = status(
      Suitability::Supported, {{"extremum.area-order", "area order follows value order"}});
  at(Task::Sort) = at(Task::FindExtremum);
  at(Task::DetermineRange) = status(
      Suitability::Confuser,
      {{"determine-range.normalized", "normalization erases absolute magnitude"}});
  at(Task::CharacterizeDistribution) = status(
      Suitability::Conditional,
      {{"distribution.partition-phase", "readable only where it aligns with the row/column partitions"}});
  if (t.scale_type == ScaleType::Interval) {
    at(Task::CharacterizeDistribution)
        .reasons.push_back({"scale.interval-unit", "the apparent shape depends on the unit's zero point"});
  }
  at(Task::Correlate) = status(
      Suitability::Conditional,
      {{"correlate.spurious", "grid distortion can suggest correlations; magnitudes are unreliable"}});
  at(Task::FindAnomalies) = status(
      Suitability::Supported,
      {{"anomalies.false-positives", "distortion around large cells can cause false positives"}});
  at(Task::Cluster) = status(
      Suitability::Conditional,
      {{"cluster-filter.narrow", "similar values become indistinguishable areas"}});
  at(Task::Filter) = at(Task::Cluster);

  if (!has_labels) {
    at(Task::RetrieveValue).status = Suitability::Confuser;
    at(Task::RetrieveValue).reasons.front().text = "the table carries no labels or secondary encoding";
  }
  const auto [lo, hi] = data_extremes(t);
  if (hi / lo < options.narrow_ratio) {
    for (Task task : {Task::Cluster, Task::Filter}) {
      at(task).status = Suitability::Confuser;
      at(task).reasons.front().text = "max/min value ratio is below the narrow-distribution bound";
    }
  }
  if (check_range(normalize(t), width, height, options).state == RangeState::Fail) {
    for (Task task : {Task::RetrieveValue, Task::FindAnomalies}) {
      downgrade(at(task));
      at(task).reasons.push_back({"range.subpixel", "some cells fall below one square pixel"});
    }
  }
  return tasks;
}

GuidanceReport guide(const Table& t, bool has_labels, double width, double height,
                     const GuidanceOptions& options) {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "width and height must be positive");
  }
  GuidanceReport r;
  r.range = check_range(normalize(t), width, height, options);
  r.cardinality = check_cardinality(t, width, height);
  r.axis_warnings = axis_guidance(t);
  r.scale_notes = scale_guidance(t);
  r.tasks = task_suitability(t, has_labels, width, height, options);
  return r;
}

std::string render_text(const GuidanceReport& report) {
  std::string out;
  char buf[256];
  switch (report.range.state) {
    case RangeState::Pass:
      std::snprintf(buf, sizeof buf, "range: Pass (min fraction %.6g, threshold %.6g)\n",
                    report.range.min_fraction, report.range.threshold);
      break;
    case RangeState::Warn:
      std::snprintf(buf, sizeof buf, "range: Warn (max/min ratio %.6g exceeds advisory bound)\n",
                    report.range.value_ratio);
      break;
    case RangeState::Fail:
      std::snprintf(buf, sizeof buf,
                    "range: Fail (min fraction %.6g below %.6g; some changes are invisible)\n",
                    report.range.min_fraction, report.range.threshold);
      break;
  }
  out += buf;
  if (report.cardinality.state == CardinalityState::Pass) {
    out += "cardinality: Pass\n";
  } else {
    std::snprintf(buf, sizeof buf, "cardinality: Fail (%s: %zu > %zu px)\n",
                  to_string(*report.cardinality.axis), report.cardinality.count,
                  report.cardinality.limit);
    out += buf;
  }
  for (const auto& w : report.axis_warnings) out += "warning [" + w.rule + "]: " + w.message + "\n";
  for (const auto& n : report.scale_notes) out += "note [" + n.rule + "]: " + n.message + "\n";
  out += "\n";
  for (std::size_t k = 0; k < kTaskCount; ++k) {
    const auto& s = report.tasks[k];
    std::snprintf(buf, sizeof buf, "%-26s %-12s", to_string(static_cast<Task>(k)), to_string(s.status));
    out += buf;
    for (std::size_t r = 0; r < s.reasons.size(); ++r) out += (r ? ", " : "") + s.reasons[r].rule;
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  }
  return out;
}

}  // namespace taco
