#include "embedding.hpp"

#include <cmath>
#include <limits>

#include "taco/error.hpp"

namespace taco::detail {

namespace {

// Cell-corner area derivatives, d A / d(x, y) for p0..p3.
struct CornerGradient {
  double dx[4];
  double dy[4];
};

CornerGradient corner_gradient(const CellQuad& q) {
  const double d02x = q.p2.x - q.p0.x, d02y = q.p2.y - q.p0.y;
  const double d13x = q.p3.x - q.p1.x, d13y = q.p3.y - q.p1.y;
  return {{-0.5 * d13y, 0.5 * d02y, 0.5 * d13y, -0.5 * d02y},
          {0.5 * d13x, -0.5 * d02x, -0.5 * d13x, 0.5 * d02x}};
}

}  // namespace

ConvexEmbedding::ConvexEmbedding(std::size_t rows, std::size_t cols, double width, double height)
    : rows_(rows), cols_(cols), width_(width), height_(height),
      interior_((rows - 1) * (cols - 1)) {
  top_ = 4 * interior_;
  bottom_ = top_ + cols_;
  left_ = bottom_ + cols_;
  right_ = left_ + rows_;
  params_ = right_ + rows_;
  lambda_.assign(4 * interior_, 0.25);
}

void ConvexEmbedding::neighbours(std::size_t i, std::size_t j, std::size_t oi[4],
                                 std::size_t oj[4]) const {
  oi[0] = i - 1; oj[0] = j;      // up
  oi[1] = i;     oj[1] = j + 1;  // right
  oi[2] = i + 1; oj[2] = j;      // down
  oi[3] = i;     oj[3] = j - 1;  // left
}

void ConvexEmbedding::edge_positions(const Eigen::VectorXd& u, std::size_t offset,
                                     std::size_t segments, double length,
                                     std::vector<double>& pos) const {
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < segments; ++l) top = std::max(top, u[offset + l]);
  std::vector<double> e(segments);
  double total = 0.0;
  for (std::size_t l = 0; l < segments; ++l) {
    e[l] = std::exp(u[offset + l] - top);
    total += e[l];
  }
  pos.assign(segments + 1, 0.0);
  double acc = 0.0;
  for (std::size_t l = 0; l + 1 < segments; ++l) {
    acc += e[l];
    pos[l + 1] = length * (acc / total);
  }
  pos[segments] = length;
}

Eigen::VectorXd ConvexEmbedding::fit(const Mesh& mesh) const {
  Eigen::VectorXd u(static_cast<long>(params_));
  for (std::size_t j = 0; j < cols_; ++j) {
    u[top_ + j] = std::log(mesh.vertex(0, j + 1).x - mesh.vertex(0, j).x);
    u[bottom_ + j] = std::log(mesh.vertex(rows_, j + 1).x - mesh.vertex(rows_, j).x);
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    u[left_ + i] = std::log(mesh.vertex(i + 1, 0).y - mesh.vertex(i, 0).y);
    u[right_ + i] = std::log(mesh.vertex(i + 1, cols_).y - mesh.vertex(i, cols_).y);
  }
  for (std::size_t i = 1; i < rows_; ++i) {
    for (std::size_t j = 1; j < cols_; ++j) {
      const Point v = mesh.vertex(i, j);
      std::size_t ni[4], nj[4];
      neighbours(i, j, ni, nj);
      double dxk[4], dyk[4], r[4], half_tan[4];
      for (int k = 0; k < 4; ++k) {
        const Point p = mesh.vertex(ni[k], nj[k]);
        dxk[k] = p.x - v.x;
        dyk[k] = p.y - v.y;
        r[k] = std::hypot(dxk[k], dyk[k]);
      }
      // Mean value coordinates over the neighbour polygon up, right, down,
      // left (counter-clockwise with y pointing down).
      for (int k = 0; k < 4; ++k) {
        const int l = (k + 1) % 4;
        const double cross = dxk[k] * dyk[l] - dyk[k] * dxk[l];
        const double dot = dxk[k] * dxk[l] + dyk[k] * dyk[l];
        if (!(cross > 0.0)) {
          throw Error(ErrorCode::InvalidArgument,
                      "vertex (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") lies outside the kernel of its neighbour polygon");
        }
        half_tan[k] = (r[k] * r[l] - dot) / cross;
      }
      double w[4], total = 0.0;
      for (int k = 0; k < 4; ++k) {
        w[k] = (half_tan[(k + 3) % 4] + half_tan[k]) / r[k];
        total += w[k];
      }
      const std::size_t v_idx = interior_index(i, j);
      for (int k = 0; k < 4; ++k) u[4 * v_idx + k] = std::log(w[k] / total);
    }
  }
  return u;
}

Mesh ConvexEmbedding::realize(const Eigen::VectorXd& u) {
  Mesh mesh(rows_, cols_, width_, height_);
  std::vector<double> top, bottom, left, right;
  edge_positions(u, top_, cols_, width_, top);
  edge_positions(u, bottom_, cols_, width_, bottom);
  edge_positions(u, left_, rows_, height_, left);
  edge_positions(u, right_, rows_, height_, right);
  for (std::size_t j = 0; j <= cols_; ++j) {
    mesh.set_vertex(0, j, {top[j], 0.0});
    mesh.set_vertex(rows_, j, {bottom[j], height_});
  }
  for (std::size_t i = 1; i < rows_; ++i) {
    mesh.set_vertex(i, 0, {0.0, left[i]});
    mesh.set_vertex(i, cols_, {width_, right[i]});
  }
  if (interior_ == 0) return mesh;

  const long ni = static_cast<long>(interior_);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(5 * interior_);
  Eigen::VectorXd rhs_x = Eigen::VectorXd::Zero(ni), rhs_y = Eigen::VectorXd::Zero(ni);
  for (std::size_t i = 1; i < rows_; ++i) {
    for (std::size_t j = 1; j < cols_; ++j) {
      const std::size_t v = interior_index(i, j);
      double top_w = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < 4; ++k) top_w = std::max(top_w, u[4 * v + k]);
      double e[4], total = 0.0;
      for (int k = 0; k < 4; ++k) {
        e[k] = std::exp(u[4 * v + k] - top_w);
        total += e[k];
      }
      triplets.emplace_back(static_cast<long>(v), static_cast<long>(v), 1.0);
      std::size_t nbi[4], nbj[4];
      neighbours(i, j, nbi, nbj);
      for (int k = 0; k < 4; ++k) {
        const double lam = e[k] / total;
        lambda_[4 * v + k] = lam;
        const bool inner = nbi[k] > 0 && nbi[k] < rows_ && nbj[k] > 0 && nbj[k] < cols_;
        if (inner) {
          triplets.emplace_back(static_cast<long>(v), static_cast<long>(interior_index(nbi[k], nbj[k])),
                                -lam);
        } else {
          const Point p = mesh.vertex(nbi[k], nbj[k]);
          rhs_x[static_cast<long>(v)] += lam * p.x;
          rhs_y[static_cast<long>(v)] += lam * p.y;
        }
      }
    }
  }
  system_.resize(ni, ni);
  system_.setFromTriplets(triplets.begin(), triplets.end());
  lu_.compute(system_);
  if (lu_.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "convex-combination system is singular");
  }
  const Eigen::VectorXd xs = lu_.solve(rhs_x);
  const Eigen::VectorXd ys = lu_.solve(rhs_y);
  for (std::size_t i = 1; i < rows_; ++i) {
    for (std::size_t j = 1; j < cols_; ++j) {
      const long v = static_cast<long>(interior_index(i, j));
      mesh.set_vertex(i, j, {xs[v], ys[v]});
    }
  }
  return mesh;
}

Eigen::MatrixXd ConvexEmbedding::area_jacobian(const Eigen::VectorXd& u, const Mesh& mesh) {
  const long cells = static_cast<long>(rows_ * cols_);
  const long ni = static_cast<long>(interior_);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(cells, static_cast<long>(params_));

  // Direct area derivatives w.r.t. every vertex coordinate.
  const std::size_t nv = (rows_ + 1) * (cols_ + 1);
  Eigen::MatrixXd direct_x = Eigen::MatrixXd::Zero(cells, static_cast<long>(nv));
  Eigen::MatrixXd direct_y = Eigen::MatrixXd::Zero(cells, static_cast<long>(nv));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const long c = static_cast<long>(i * cols_ + j);
      const auto g = corner_gradient(cell_quad(mesh, i, j));
      const std::size_t vk[4] = {mesh.index(i, j), mesh.index(i, j + 1), mesh.index(i + 1, j + 1),
                                 mesh.index(i + 1, j)};
      for (int k = 0; k < 4; ++k) {
        direct_x(c, static_cast<long>(vk[k])) += g.dx[k];
        direct_y(c, static_cast<long>(vk[k])) += g.dy[k];
      }
    }
  }

  // Total sensitivity to a forcing term at each interior vertex:
  // Y = J_interior * A^{-1}, computed as A^{-T} J_interior^T.
  Eigen::MatrixXd yx, yy;
  if (ni > 0) {
    Eigen::MatrixXd jx(ni, cells), jy(ni, cells);
    for (std::size_t i = 1; i < rows_; ++i) {
      for (std::size_t j = 1; j < cols_; ++j) {
        const long v = static_cast<long>(interior_index(i, j));
        jx.row(v) = direct_x.col(static_cast<long>(mesh.index(i, j))).transpose();
        jy.row(v) = direct_y.col(static_cast<long>(mesh.index(i, j))).transpose();
      }
    }
    Eigen::SparseMatrix<double> at = system_.transpose();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_t(at);
    yx = lu_t.solve(jx).transpose();
    yy = lu_t.solve(jy).transpose();

    for (std::size_t i = 1; i < rows_; ++i) {
      for (std::size_t j = 1; j < cols_; ++j) {
        const std::size_t v = interior_index(i, j);
        const Point pv = mesh.vertex(i, j);
        std::size_t nbi[4], nbj[4];
        neighbours(i, j, nbi, nbj);
        for (int k = 0; k < 4; ++k) {
          const Point p = mesh.vertex(nbi[k], nbj[k]);
          const double lam = lambda_[4 * v + k];
          jac.col(static_cast<long>(4 * v + k)) =
              lam * ((p.x - pv.x) * yx.col(static_cast<long>(v)) +
                     (p.y - pv.y) * yy.col(static_cast<long>(v)));
        }
      }
    }
  }

  // Boundary: sensitivity of every cell to the along-edge coordinate of each
  // edge vertex, then chained through the softmax split.
  auto boundary_block = [&](std::size_t offset, std::size_t segments, double length,
                            auto vertex_of, bool along_x, int inner_slot, auto inner_of) {
    std::vector<double> pos;
    edge_positions(u, offset, segments, length, pos);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < segments; ++l) top = std::max(top, u[offset + l]);
    std::vector<double> e(segments);
    double total = 0.0;
    for (std::size_t l = 0; l < segments; ++l) {
      e[l] = std::exp(u[offset + l] - top);
      total += e[l];
    }
    for (std::size_t b = 1; b < segments; ++b) {
      const std::size_t vid = vertex_of(b);
      Eigen::VectorXd g = along_x ? direct_x.col(static_cast<long>(vid)) : direct_y.col(static_cast<long>(vid));
      std::size_t ii = 0, jj = 0;
      if (ni > 0 && inner_of(b, ii, jj)) {
        const long v = static_cast<long>(interior_index(ii, jj));
        const double lam = lambda_[4 * static_cast<std::size_t>(v) + inner_slot];
        g += lam * (along_x ? yx.col(v) : yy.col(v));
      }
      const double frac = pos[b] / length;
      for (std::size_t l = 0; l < segments; ++l) {
        const double dpos = length * (e[l] / total) * ((l < b ? 1.0 : 0.0) - frac);
        jac.col(static_cast<long>(offset + l)) += dpos * g;
      }
    }
  };

  const std::size_t m = rows_, n = cols_;
  boundary_block(top_, n, width_, [&](std::size_t b) { return mesh.index(0, b); }, true, 0,
                 [&](std::size_t b, std::size_t& ii, std::size_t& jj) {
                   if (m < 2) return false;
                   ii = 1; jj = b;
                   return true;
                 });
  boundary_block(bottom_, n, width_, [&](std::size_t b) { return mesh.index(m, b); }, true, 2,
                 [&](std::size_t b, std::size_t& ii, std::size_t& jj) {
                   if (m < 2) return false;
                   ii = m - 1; jj = b;
                   return true;
                 });
  boundary_block(left_, m, height_, [&](std::size_t b) { return mesh.index(b, 0); }, false, 3,
                 [&](std::size_t b, std::size_t& ii, std::size_t& jj) {
                   if (n < 2) return false;
                   ii = b; jj = 1;
                   return true;
                 });
  boundary_block(right_, m, height_, [&](std::size_t b) { return mesh.index(b, n); }, false, 1,
                 [&](std::size_t b, std::size_t& ii, std::size_t& jj) {
                   if (n < 2) return false;
                   ii = b; jj = n - 1;
                   return true;
                 });
  return jac;
}

Eigen::MatrixXd ConvexEmbedding::vertex_jacobian(const Eigen::VectorXd& u, const Mesh& mesh) const {
  const long nv = static_cast<long>((rows_ + 1) * (cols_ + 1));
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * nv, static_cast<long>(params_));
  const long ni = static_cast<long>(interior_);
  Eigen::MatrixXd inverse;
  if (ni > 0) inverse = lu_.solve(Eigen::MatrixXd::Identity(ni, ni));

  // A unit forcing on interior vertex v along one axis moves every interior
  // vertex by the matching column of the inverse system.
  auto spread = [&](long v, bool along_x, double amount, long col) {
    for (std::size_t i = 1; i < rows_; ++i) {
      for (std::size_t j = 1; j < cols_; ++j) {
        const long w = static_cast<long>(interior_index(i, j));
        const long row = static_cast<long>(mesh.index(i, j)) + (along_x ? 0 : nv);
        jac(row, col) += inverse(w, v) * amount;
      }
    }
  };

  for (std::size_t i = 1; i < rows_; ++i) {
    for (std::size_t j = 1; j < cols_; ++j) {
      const std::size_t v = interior_index(i, j);
      const Point pv = mesh.vertex(i, j);
      std::size_t nbi[4], nbj[4];
      neighbours(i, j, nbi, nbj);
      for (int k = 0; k < 4; ++k) {
        const Point p = mesh.vertex(nbi[k], nbj[k]);
        const double lam = lambda_[4 * v + k];
        const long col = static_cast<long>(4 * v + k);
        spread(static_cast<long>(v), true, lam * (p.x - pv.x), col);
        spread(static_cast<long>(v), false, lam * (p.y - pv.y), col);
      }
    }
  }

  auto boundary_block = [&](std::size_t offset, std::size_t segments, double length,
                            auto vertex_of, bool along_x, int inner_slot, auto inner_of) {
    std::vector<double> pos;
    edge_positions(u, offset, segments, length, pos);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < segments; ++l) top = std::max(top, u[offset + l]);
    std::vector<double> e(segments);
    double total = 0.0;
    for (std::size_t l = 0; l < segments; ++l) {
      e[l] = std::exp(u[offset + l] - top);
      total += e[l];
    }
    for (std::size_t b = 1; b < segments; ++b) {
      const long row = static_cast<long>(vertex_of(b)) + (along_x ? 0 : nv);
      std::size_t ii = 0, jj = 0;
      const bool inner = ni > 0 && inner_of(b, ii, jj);
      const double frac = pos[b] / length;
      for (std::size_t l = 0; l < segments; ++l) {
        const double dpos = length * (e[l] / total) * ((l < b ? 1.0 : 0.0) - frac);
        const long col = static_cast<long>(offset + l);
        jac(row, col) += dpos;
        if (inner) {
          const std::size_t v = interior_index(ii, jj);
          spread(static_cast<long>(v), along_x, lambda_[4 * v + inner_slot] * dpos, col);
        }
      }
    }
  };

  const std::size_t m = rows_, n = cols_;
  boundary_block(top_, n, width_, [&](std::size_t b) { return mesh.index(0, b); }, true, 0,
                 [&](std::size_t b, std::size_t& ii, std::size_t& jj) {
                   if (m < 2) return false;
                   ii = 1; jj = b;
                   return true;
                 });
  boundary_block(bottom_, n, width_, [&](std::size_t b) { return mesh.index(m, b); }, true, 2,
                 [&](std::size_t b, std::size_t& ii, std::size_t& jj) {
                   if (m < 2) return false;
                   ii = m - 1; jj = b;
                   return true;
                 });
  boundary_block(left_, m, height_, [&](std::size_t b) { return mesh.index(b, 0); }, false, 3,
                 [&](std::size_t b, std::size_t& ii, std::size_t& jj) {
                   if (n < 2) return false;
                   ii = b; jj = 1;
                   return true;
                 });
  boundary_block(right_, m, height_, [&](std::size_t b) { return mesh.index(b, n); }, false, 1,
                 [&](std::size_t b, std::size_t& ii, std::size_t& jj) {
                   if (n < 2) return false;
                   ii = b; jj = n - 1;
                   return true;
                 });
  return jac;
}

}  // namespace taco::detail
