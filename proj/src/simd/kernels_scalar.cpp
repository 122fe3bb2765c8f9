#include "kernels_impl.hpp"

namespace taco::simd::detail {

void cell_areas_scalar(GridShape shape, const double* x, const double* y, double* out) {
  const std::size_t vs = shape.cols + 1;
  for (std::size_t i = 0; i < shape.rows; ++i) {
    const double* xt = x + i * vs;
    const double* yt = y + i * vs;
    const double* xb = xt + vs;
    const double* yb = yt + vs;
    double* o = out + i * shape.cols;
    for (std::size_t j = 0; j < shape.cols; ++j) {
      const double dx02 = xb[j + 1] - xt[j];
      const double dy02 = yb[j + 1] - yt[j];
      const double dx13 = xb[j] - xt[j + 1];
      const double dy13 = yb[j] - yt[j + 1];
      o[j] = 0.5 * (dx02 * dy13 - dx13 * dy02);
    }
  }
}

void fill_diagonals_scalar(GridShape shape, const double* x, const double* y,
                           const double* weight, GradientWorkspace& ws, std::size_t i,
                           std::size_t j_begin) {
  const std::size_t vs = shape.cols + 1;
  const std::size_t ps = ws.stride();
  const double* xt = x + i * vs;
  const double* yt = y + i * vs;
  const double* xb = xt + vs;
  const double* yb = yt + vs;
  const std::size_t row = (i + 1) * ps + 1;
  for (std::size_t j = j_begin; j < shape.cols; ++j) {
    const double h = 0.5 * weight[i * shape.cols + j];
    ws.ux()[row + j] = h * (xb[j] - xt[j + 1]);
    ws.uy()[row + j] = h * (yb[j] - yt[j + 1]);
    ws.vx()[row + j] = h * (xb[j + 1] - xt[j]);
    ws.vy()[row + j] = h * (yb[j + 1] - yt[j]);
  }
}

void gather_scalar(GridShape shape, GradientWorkspace& ws, std::size_t i, std::size_t j_begin,
                   double* gx, double* gy) {
  const std::size_t vs = shape.cols + 1;
  const std::size_t ps = ws.stride();
  // Cells around vertex (i, j) in padded coordinates:
  //   (i+1, j+1) as p0, (i+1, j) as p1, (i, j) as p2, (i, j+1) as p3.
  const double* ux_lo = ws.ux() + (i + 1) * ps;
  const double* uy_lo = ws.uy() + (i + 1) * ps;
  const double* vx_lo = ws.vx() + (i + 1) * ps;
  const double* vy_lo = ws.vy() + (i + 1) * ps;
  const double* ux_hi = ws.ux() + i * ps;
  const double* uy_hi = ws.uy() + i * ps;
  const double* vx_hi = ws.vx() + i * ps;
  const double* vy_hi = ws.vy() + i * ps;
  for (std::size_t j = j_begin; j < vs; ++j) {
    gx[i * vs + j] = ((vy_lo[j] - uy_lo[j + 1]) + uy_hi[j]) - vy_hi[j + 1];
    gy[i * vs + j] = ((ux_lo[j + 1] - vx_lo[j]) - ux_hi[j]) + vx_hi[j + 1];
  }
}

void weighted_area_gradient_scalar(GridShape shape, const double* x, const double* y,
                                   const double* weight, GradientWorkspace& ws, double* gx,
                                   double* gy) {
  ws.resize(shape);
  for (std::size_t i = 0; i < shape.rows; ++i) fill_diagonals_scalar(shape, x, y, weight, ws, i, 0);
  for (std::size_t i = 0; i <= shape.rows; ++i) gather_scalar(shape, ws, i, 0, gx, gy);
}

}  // namespace taco::simd::detail
