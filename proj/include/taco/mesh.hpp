#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "taco/simd/kernels.hpp"

namespace taco {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

/// (rows + 1) x (cols + 1) vertex grid over the rectangle [0, w] x [0, h],
/// uniform when freshly constructed.
/// Row 0 is the top edge (y = 0), matching SVG orientation, so a cell's
/// vertices p0..p3 run counter-clockwise in the y-up convention and have a
/// positive shoelace area.
class Mesh {
 public:
  Mesh() = default;
  Mesh(std::size_t rows, std::size_t cols, double width, double height);

  /// Axis-aligned mesh with the given cut positions. `row_cuts` has rows + 1
  /// entries from 0 to height, `col_cuts` cols + 1 entries from 0 to width.
  static Mesh rectilinear(const std::vector<double>& row_cuts, const std::vector<double>& col_cuts);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double width() const noexcept { return width_; }
  double height() const noexcept { return height_; }
  simd::GridShape shape() const noexcept { return {rows_, cols_}; }

  std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * (cols_ + 1) + j; }
  Point vertex(std::size_t i, std::size_t j) const { return {x_[index(i, j)], y_[index(i, j)]}; }
  void set_vertex(std::size_t i, std::size_t j, Point p) {
    x_[index(i, j)] = p.x;
    y_[index(i, j)] = p.y;
  }

  const std::vector<double>& xs() const noexcept { return x_; }
  const std::vector<double>& ys() const noexcept { return y_; }
  std::vector<double>& xs() noexcept { return x_; }
  std::vector<double>& ys() noexcept { return y_; }

  bool same_shape(const Mesh& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  bool operator==(const Mesh&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  double width_ = 0.0;
  double height_ = 0.0;
  std::vector<double> x_;
  std::vector<double> y_;
};

/// Shoelace area of a quad, evaluated through its diagonals. Positive for
/// counter-clockwise order in the y-up convention.
double signed_quad_area(Point p0, Point p1, Point p2, Point p3);

/// True when no two non-adjacent edges of the quad touch and no vertex
/// repeats.
bool quad_is_simple(Point p0, Point p1, Point p2, Point p3);

/// True when the quad is simple, positively oriented, and has a reflex corner.
bool quad_is_concave(Point p0, Point p1, Point p2, Point p3);

struct CellQuad {
  Point p0, p1, p2, p3;
};
CellQuad cell_quad(const Mesh& mesh, std::size_t i, std::size_t j);

double signed_cell_area(const Mesh& mesh, std::size_t i, std::size_t j);

/// Absolute shoelace area of cell (i, j) in px^2. Throws IndexOutOfRange.
double cell_area(const Mesh& mesh, std::size_t i, std::size_t j);

/// Signed areas of all cells, row-major, via the active SIMD kernel.
std::vector<double> signed_cell_areas(const Mesh& mesh);

/// Centroid of the quad's polygon (area-weighted); falls back to the vertex
/// mean for degenerate cells.
Point cell_centroid(const Mesh& mesh, std::size_t i, std::size_t j);

enum class ViolationKind {
  NonFiniteVertex,
  CornerMoved,
  BoundaryOffEdge,
  SelfIntersectingCell,
  NonPositiveCell,
  AreaSumMismatch,
};

const char* to_string(ViolationKind kind);

struct TopologyViolation {
  ViolationKind kind;
  std::size_t i = 0;  // vertex or cell row
  std::size_t j = 0;  // vertex or cell column
  std::string message;
};

/// Empty iff every mesh invariant holds.
std::vector<TopologyViolation> check_topology(const Mesh& mesh);

/// True when every cell is simple and positively oriented. This is the
/// cheap subset of check_topology the optimizer runs on every trial step.
bool cells_valid(const Mesh& mesh);

std::size_t concave_cell_count(const Mesh& mesh);

}  // namespace taco
