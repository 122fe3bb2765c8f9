#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "taco/mesh.hpp"
#include "taco/table.hpp"

namespace taco {

struct LayoutParams {
  double width = 500.0;
  double height = 500.0;
  double tolerance = 0.01;         // max relative area error
  std::size_t max_iterations = 20000;
  std::uint64_t seed = 1;
  double jitter = 0.0;             // fraction of the smallest marginal cell span
  double step_size = 1.0;          // first line-search trial, fraction of the Gauss-Newton step
  double shrink_factor = 0.5;      // line-search backtracking factor

  void validate() const;
};

struct LayoutResult {
  Mesh mesh;
  bool converged = false;
  std::size_t iterations = 0;
  double max_relative_area_error = 0.0;
  std::vector<double> objective_trace;
  std::size_t concave_cells = 0;
  std::size_t continuation_stages = 0;
  std::string stop_reason;
};

/// Per-cell target areas w * h * fraction, row-major.
///
/// Fractions are first rounded to 24 significant bits. Normalization of a
/// scaled table can differ from the unscaled one in the last few ulps; the
/// rounding absorbs that so scaled tables lay out bit for bit identically.
/// Throws DegenerateTarget when a target is not a normal positive double.
std::vector<double> area_targets(const NormalizedTable& nt, double width, double height);

/// Marginal product mesh with optional seeded jitter of interior vertices.
Mesh initial_layout(const NormalizedTable& nt, const LayoutParams& params);

/// Minimizes sum(((a - t) / t)^2) starting from initial_layout().
///
/// The mesh is reparametrized as a convex-combination embedding (softmax
/// splits of the four sides, softmax neighbour weights for interior vertices)
/// and descended with damped Gauss-Newton steps under a backtracking Armijo
/// line search that also rejects any mesh with a non-simple or negatively
/// oriented cell. Targets are reached through a continuation path from the
/// start mesh's own areas. Deterministic in (nt, params).
LayoutResult optimize(const NormalizedTable& nt, const LayoutParams& params);

/// max_ij |area_ij - target_ij| / target_ij. Throws ShapeMismatch.
double max_relative_area_error(const Mesh& mesh, const NormalizedTable& nt);

/// normalize() followed by optimize().
LayoutResult layout_table(const Table& table, const LayoutParams& params);

}  // namespace taco
