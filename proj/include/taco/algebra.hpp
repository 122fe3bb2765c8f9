#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taco/layout.hpp"
#include "taco/table.hpp"

namespace taco {

enum class AlphaKind {
  PermuteRows,
  PermuteCols,
  Transpose,
  Reciprocal,
  UniformScale,
  Affine,
  DoubleMin,
  ReplaceOutliersWithRowMean,
  DecorrelateAxis,
  SetCell,
  SeedChange,
};

enum class Axis { Rows, Cols };

const char* to_string(AlphaKind kind);
const char* to_string(Axis axis);

/// A data transformation. Only the fields relevant to `kind` are read.
struct Alpha {
  AlphaKind kind = AlphaKind::UniformScale;
  std::vector<std::size_t> perm;  // Permute*: new position p takes old index perm[p]
  double k = 1.0;                 // UniformScale
  double mul = 1.0, add = 0.0;    // Affine
  std::optional<std::string> unit;  // Affine: unit of the result
  double z_threshold = 2.0;       // ReplaceOutliersWithRowMean
  Axis axis = Axis::Rows;         // DecorrelateAxis
  std::size_t row = 0, col = 0;   // SetCell
  double value = 0.0;             // SetCell
  std::uint64_t seed = 0;         // SeedChange

  static Alpha permute_rows(std::vector<std::size_t> perm);
  static Alpha permute_cols(std::vector<std::size_t> perm);
  static Alpha transpose();
  static Alpha reciprocal();
  static Alpha uniform_scale(double k);
  static Alpha affine(double mul, double add, std::optional<std::string> unit = std::nullopt);
  static Alpha double_min();
  static Alpha replace_outliers(double z_threshold = 2.0);
  static Alpha decorrelate(Axis axis);
  static Alpha set_cell(std::size_t i, std::size_t j, double value);
  static Alpha seed_change(std::uint64_t seed);

  /// Compact textual form, e.g. "scale:10", "permute-rows:2,0,1".
  std::string describe() const;
};

/// Parses the describe() syntax. A permutation without indices is left
/// empty, to be drawn from a seed by resolve_alpha().
Alpha parse_alpha(std::string_view text);

/// Fills in an empty permutation with a seeded non-identity shuffle.
Alpha resolve_alpha(const Alpha& a, const Table& t, std::uint64_t seed);

/// Trivial when the change is a re-representation of the same data given the
/// table's metadata (relabeling a nominal axis, unit change on interval data,
/// transposition, a different layout seed).
bool semantically_trivial(const Alpha& a, const Table& t);

/// Throws AlphaPrecondition when the alpha does not apply to `t`.
Table apply_alpha(const Table& t, const Alpha& a);

struct LayoutComparison {
  double distance = 0.0;              // mean vertex displacement / diagonal
  std::vector<double> cell_area_delta;  // |area_a - area_b| per cell, px^2
};

/// Throws ShapeMismatch unless the grids and rectangles agree.
LayoutComparison compare_layouts(const Mesh& a, const Mesh& b);
double layout_distance(const Mesh& a, const Mesh& b);

/// Maps a layout of the transposed table back onto the original frame:
/// vertex (i, j) takes vertex (j, i) reflected through the rectangle's
/// diagonal, (x, y) -> (y w / h, x h / w). The reflection preserves area.
Mesh untranspose_mesh(const Mesh& m);

enum class Verdict { Commutes, Confuser, Hallucinator, Inconclusive };

const char* to_string(Verdict v);

struct ProbeConfig {
  double data_significance = 0.05;         // on the applicable data distance
  double min_mean_displacement_frac = 0.001;
  double min_cell_area_delta_px2 = 1.0;

  void validate() const;
};

/// The decision table. Non-convergence wins over everything else.
Verdict decide_verdict(bool data_trivial, bool visible, bool converged);

struct ProbeReport {
  Alpha alpha;
  std::string description;
  bool semantically_trivial = false;
  double data_distance_raw = 0.0;
  double data_distance_normalized = 0.0;
  std::string applicable_distance;  // "raw" or "normalized"
  bool data_trivial = false;
  double layout_distance = 0.0;
  double max_cell_area_delta_px2 = 0.0;
  std::size_t max_delta_row = 0, max_delta_col = 0;
  bool visible = false;
  Verdict verdict = Verdict::Inconclusive;
  ProbeConfig thresholds;
  bool before_converged = false, after_converged = false;
  double before_error = 0.0, after_error = 0.0;
  std::optional<bool> order_inverted;  // Reciprocal only
  std::vector<std::string> notes;
};

/// Lays out `t` and its image under `a` (for SeedChange: `t` under the new
/// seed) and classifies the pair.
ProbeReport run_probe(const Table& t, const Alpha& a, const LayoutParams& lp,
                      const ProbeConfig& pc);

/// Same, reusing a layout of `t` under `lp` that the caller already has.
ProbeReport run_probe(const Table& t, const LayoutResult& before, const Alpha& a,
                      const LayoutParams& lp, const ProbeConfig& pc);

struct SkippedAlpha {
  std::string alpha;
  std::string reason;
};

struct SuiteReport {
  std::uint64_t suite_seed = 0;
  std::vector<ProbeReport> reports;  // catalog order
  std::vector<SkippedAlpha> skipped;
};

/// The standard battery in fixed catalog order. Every stochastic choice is
/// drawn from `suite_seed` before any probe runs; `threads` > 1 runs probes
/// concurrently without changing the result.
SuiteReport run_suite(const Table& t, const LayoutParams& lp, const ProbeConfig& pc,
                      std::uint64_t suite_seed, unsigned threads = 1);

}  // namespace taco
