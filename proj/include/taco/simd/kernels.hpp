#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Data-parallel inner loops of the layout optimizer.
//
// Vertex coordinates live in two row-major arrays `x`, `y` of size
// (rows + 1) * (cols + 1). Cell (i, j) is the quad
//   p0 = v(i, j), p1 = v(i, j + 1), p2 = v(i + 1, j + 1), p3 = v(i + 1, j)
// and its signed area is evaluated through the diagonals:
//   A = 0.5 * ((x2 - x0) * (y3 - y1) - (x3 - x1) * (y2 - y0)).
//
// Every variant performs the same IEEE operations in the same order, so all
// variants agree bit for bit. No FMA is used anywhere.
namespace taco::simd {

struct GridShape {
  std::size_t rows = 0;  // cell rows
  std::size_t cols = 0;  // cell columns
  std::size_t vertex_count() const { return (rows + 1) * (cols + 1); }
  std::size_t cell_count() const { return rows * cols; }
};

/// Reusable scratch for the gradient gather. Sized lazily.
class GradientWorkspace {
 public:
  void resize(GridShape shape);
  std::size_t stride() const { return stride_; }
  double* ux() { return ux_.data(); }
  double* uy() { return uy_.data(); }
  double* vx() { return vx_.data(); }
  double* vy() { return vy_.data(); }

 private:
  GridShape shape_{};
  std::size_t stride_ = 0;
  std::vector<double> ux_, uy_, vx_, vy_;
};

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  // out[i * cols + j] = signed area of cell (i, j)
  void (*cell_areas)(GridShape shape, const double* x, const double* y, double* out);
  // gx, gy (vertex-sized) = d/dv sum_c weight[c] * A_c
  void (*weighted_area_gradient)(GridShape shape, const double* x, const double* y,
                                 const double* weight, GradientWorkspace& ws, double* gx,
                                 double* gy);
};

const KernelTable& scalar_kernels();
/// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_kernels();

/// Best variant supported by the running CPU. Chosen once per process.
/// Setting TACO_SIMD=scalar forces the reference path.
const KernelTable& active_kernels();

/// Every variant that can run on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

// Convenience wrappers over active_kernels().
void cell_areas(GridShape shape, std::span<const double> x, std::span<const double> y,
                std::span<double> out);
void weighted_area_gradient(GridShape shape, std::span<const double> x,
                            std::span<const double> y, std::span<const double> weight,
                            GradientWorkspace& ws, std::span<double> gx, std::span<double> gy);

}  // namespace taco::simd
