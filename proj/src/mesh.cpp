#include "taco/mesh.hpp"

#include <cmath>
#include <string>

#include "taco/error.hpp"

namespace taco {

namespace {

double orient(Point a, Point b, Point c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

// Closed-segment intersection test; touching counts.
bool segments_touch(Point a, Point b, Point c, Point d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
    return true;
  }
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

void check_index(const Mesh& mesh, std::size_t i, std::size_t j) {
  if (i >= mesh.rows() || j >= mesh.cols()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "cell (" + std::to_string(i) + ", " + std::to_string(j) + ") outside " +
                    std::to_string(mesh.rows()) + "x" + std::to_string(mesh.cols()) + " mesh");
  }
}

std::string at(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

Mesh::Mesh(std::size_t rows, std::size_t cols, double width, double height)
    : rows_(rows), cols_(cols), width_(width), height_(height),
      x_((rows + 1) * (cols + 1), 0.0), y_((rows + 1) * (cols + 1), 0.0) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::InvalidArgument, "mesh needs at least one cell");
  if (!(width > 0.0) || !(height > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "mesh rectangle must have positive size");
  }
  for (std::size_t i = 0; i <= rows; ++i) {
    for (std::size_t j = 0; j <= cols; ++j) {
      // Exact edges, not accumulated steps.
      x_[index(i, j)] = j == cols ? width : width * static_cast<double>(j) / static_cast<double>(cols);
      y_[index(i, j)] = i == rows ? height : height * static_cast<double>(i) / static_cast<double>(rows);
    }
  }
}

Mesh Mesh::rectilinear(const std::vector<double>& row_cuts, const std::vector<double>& col_cuts) {
  if (row_cuts.size() < 2 || col_cuts.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "need at least two cuts per axis");
  }
  Mesh mesh(row_cuts.size() - 1, col_cuts.size() - 1, col_cuts.back(), row_cuts.back());
  for (std::size_t i = 0; i < row_cuts.size(); ++i)
    for (std::size_t j = 0; j < col_cuts.size(); ++j) mesh.set_vertex(i, j, {col_cuts[j], row_cuts[i]});
  return mesh;
}

double signed_quad_area(Point p0, Point p1, Point p2, Point p3) {
  const double dx02 = p2.x - p0.x;
  const double dy02 = p2.y - p0.y;
  const double dx13 = p3.x - p1.x;
  const double dy13 = p3.y - p1.y;
  return 0.5 * (dx02 * dy13 - dx13 * dy02);
}

bool quad_is_simple(Point p0, Point p1, Point p2, Point p3) {
  if (p0 == p1 || p1 == p2 || p2 == p3 || p3 == p0 || p0 == p2 || p1 == p3) return false;
  if (segments_touch(p0, p1, p2, p3)) return false;
  if (segments_touch(p1, p2, p3, p0)) return false;
  return true;
}

bool quad_is_concave(Point p0, Point p1, Point p2, Point p3) {
  const Point p[4] = {p0, p1, p2, p3};
  for (int k = 0; k < 4; ++k) {
    if (orient(p[(k + 3) % 4], p[k], p[(k + 1) % 4]) <= 0) return true;
  }
  return false;
}

CellQuad cell_quad(const Mesh& mesh, std::size_t i, std::size_t j) {
  return {mesh.vertex(i, j), mesh.vertex(i, j + 1), mesh.vertex(i + 1, j + 1),
          mesh.vertex(i + 1, j)};
}

double signed_cell_area(const Mesh& mesh, std::size_t i, std::size_t j) {
  check_index(mesh, i, j);
  const auto q = cell_quad(mesh, i, j);
  return signed_quad_area(q.p0, q.p1, q.p2, q.p3);
}

double cell_area(const Mesh& mesh, std::size_t i, std::size_t j) {
  return std::abs(signed_cell_area(mesh, i, j));
}

std::vector<double> signed_cell_areas(const Mesh& mesh) {
  std::vector<double> out(mesh.rows() * mesh.cols());
  simd::cell_areas(mesh.shape(), mesh.xs(), mesh.ys(), out);
  return out;
}

Point cell_centroid(const Mesh& mesh, std::size_t i, std::size_t j) {
  check_index(mesh, i, j);
  const auto q = cell_quad(mesh, i, j);
  const Point p[4] = {q.p0, q.p1, q.p2, q.p3};
  double a2 = 0.0, cx = 0.0, cy = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Point s = p[k];
    const Point t = p[(k + 1) % 4];
    const double c = s.x * t.y - t.x * s.y;
    a2 += c;
    cx += (s.x + t.x) * c;
    cy += (s.y + t.y) * c;
  }
  if (std::abs(a2) < 1e-300) {
    return {(q.p0.x + q.p1.x + q.p2.x + q.p3.x) / 4.0, (q.p0.y + q.p1.y + q.p2.y + q.p3.y) / 4.0};
  }
  return {cx / (3.0 * a2), cy / (3.0 * a2)};
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonFiniteVertex: return "non-finite-vertex";
    case ViolationKind::CornerMoved: return "corner-moved";
    case ViolationKind::BoundaryOffEdge: return "boundary-off-edge";
    case ViolationKind::SelfIntersectingCell: return "self-intersecting-cell";
    case ViolationKind::NonPositiveCell: return "non-positive-cell";
    case ViolationKind::AreaSumMismatch: return "area-sum-mismatch";
  }
  return "unknown";
}

std::vector<TopologyViolation> check_topology(const Mesh& mesh) {
  std::vector<TopologyViolation> out;
  const std::size_t m = mesh.rows();
  const std::size_t n = mesh.cols();
  const double w = mesh.width();
  const double h = mesh.height();

  bool finite = true;
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      const Point p = mesh.vertex(i, j);
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        out.push_back({ViolationKind::NonFiniteVertex, i, j, "vertex " + at(i, j) + " is not finite"});
        finite = false;
      }
    }
  }
  if (!finite) return out;

  const struct {
    std::size_t i, j;
    Point p;
  } corners[] = {{0, 0, {0, 0}}, {0, n, {w, 0}}, {m, n, {w, h}}, {m, 0, {0, h}}};
  for (const auto& c : corners) {
    if (!(mesh.vertex(c.i, c.j) == c.p)) {
      out.push_back({ViolationKind::CornerMoved, c.i, c.j, "corner " + at(c.i, c.j) + " is not pinned"});
    }
  }

  for (std::size_t j = 1; j < n; ++j) {
    const Point top = mesh.vertex(0, j);
    const Point bottom = mesh.vertex(m, j);
    if (top.y != 0.0 || top.x <= 0.0 || top.x >= w) {
      out.push_back({ViolationKind::BoundaryOffEdge, 0, j, "vertex " + at(0, j) + " left the top edge"});
    }
    if (bottom.y != h || bottom.x <= 0.0 || bottom.x >= w) {
      out.push_back({ViolationKind::BoundaryOffEdge, m, j, "vertex " + at(m, j) + " left the bottom edge"});
    }
  }
  for (std::size_t i = 1; i < m; ++i) {
    const Point left = mesh.vertex(i, 0);
    const Point right = mesh.vertex(i, n);
    if (left.x != 0.0 || left.y <= 0.0 || left.y >= h) {
      out.push_back({ViolationKind::BoundaryOffEdge, i, 0, "vertex " + at(i, 0) + " left the left edge"});
    }
    if (right.x != w || right.y <= 0.0 || right.y >= h) {
      out.push_back({ViolationKind::BoundaryOffEdge, i, n, "vertex " + at(i, n) + " left the right edge"});
    }
  }

  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto q = cell_quad(mesh, i, j);
      const double a = signed_quad_area(q.p0, q.p1, q.p2, q.p3);
      total += a;
      if (!quad_is_simple(q.p0, q.p1, q.p2, q.p3)) {
        out.push_back({ViolationKind::SelfIntersectingCell, i, j, "cell " + at(i, j) + " is not simple"});
      } else if (!(a > 0.0)) {
        out.push_back({ViolationKind::NonPositiveCell, i, j, "cell " + at(i, j) + " has non-positive area"});
      }
    }
  }
  if (std::abs(total - w * h) > 1e-9 * w * h) {
    out.push_back({ViolationKind::AreaSumMismatch, 0, 0,
                   "cell areas sum to " + std::to_string(total) + " instead of " + std::to_string(w * h)});
  }
  return out;
}

bool cells_valid(const Mesh& mesh) {
  for (std::size_t i = 0; i < mesh.rows(); ++i) {
    for (std::size_t j = 0; j < mesh.cols(); ++j) {
      const auto q = cell_quad(mesh, i, j);
      if (!(signed_quad_area(q.p0, q.p1, q.p2, q.p3) > 0.0)) return false;
      if (!quad_is_simple(q.p0, q.p1, q.p2, q.p3)) return false;
    }
  }
  return true;
}

std::size_t concave_cell_count(const Mesh& mesh) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < mesh.rows(); ++i) {
    for (std::size_t j = 0; j < mesh.cols(); ++j) {
      const auto q = cell_quad(mesh, i, j);
      if (quad_is_concave(q.p0, q.p1, q.p2, q.p3)) ++count;
    }
  }
  return count;
}

}  // namespace taco
