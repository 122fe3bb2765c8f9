#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "taco/mesh.hpp"

namespace taco::detail {

// Convex-combination parametrization of a rectangle-constrained grid mesh.
//
// Boundary vertices are placed by a softmax split of each rectangle side;
// each interior vertex is a positive (softmax) combination of its four grid
// neighbours, solved as one sparse linear system. With the outer boundary
// fixed to a convex polygon every parameter vector yields a mesh whose cells
// are convex and positively oriented, so a descent in parameter space never
// has to cross a fold.
//
// Parameter layout: [interior weights (4 per interior vertex, neighbour order
// up, right, down, left)] [top segments (n)] [bottom segments (n)]
// [left segments (m)] [right segments (m)].
class ConvexEmbedding {
 public:
  ConvexEmbedding(std::size_t rows, std::size_t cols, double width, double height);

  std::size_t parameter_count() const { return params_; }
  std::size_t interior_count() const { return interior_; }

  /// Parameters reproducing `mesh` (up to rounding). Interior weights are
  /// mean value coordinates; throws InvalidArgument when a vertex lies
  /// outside the kernel of its neighbour polygon.
  Eigen::VectorXd fit(const Mesh& mesh) const;

  /// Builds the mesh for `u`. Boundary vertices land exactly on their edges.
  Mesh realize(const Eigen::VectorXd& u);

  /// d(cell signed area) / d(u), cells x parameters, for the mesh produced by
  /// the last realize() call.
  Eigen::MatrixXd area_jacobian(const Eigen::VectorXd& u, const Mesh& mesh);

  /// d(vertex coordinates) / d(u) for the last realize(): rows 0..V-1 are the
  /// x coordinates in mesh index order, rows V..2V-1 the y coordinates.
  Eigen::MatrixXd vertex_jacobian(const Eigen::VectorXd& u, const Mesh& mesh) const;

 private:
  std::size_t interior_index(std::size_t i, std::size_t j) const {
    return (i - 1) * (cols_ - 1) + (j - 1);
  }
  void neighbours(std::size_t i, std::size_t j, std::size_t out_i[4], std::size_t out_j[4]) const;
  void edge_positions(const Eigen::VectorXd& u, std::size_t offset, std::size_t segments,
                      double length, std::vector<double>& pos) const;

  std::size_t rows_, cols_;
  double width_, height_;
  std::size_t interior_;
  std::size_t params_;
  std::size_t top_, bottom_, left_, right_;  // parameter offsets
  Eigen::SparseMatrix<double> system_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  std::vector<double> lambda_;  // interior weights of the last realize()
};

}  // namespace taco::detail
