#include "kernels_impl.hpp"

#include <immintrin.h>

namespace taco::simd::detail {

void cell_areas_avx2(GridShape shape, const double* x, const double* y, double* out) {
  const std::size_t vs = shape.cols + 1;
  const __m256d half = _mm256_set1_pd(0.5);
  for (std::size_t i = 0; i < shape.rows; ++i) {
    const double* xt = x + i * vs;
    const double* yt = y + i * vs;
    const double* xb = xt + vs;
    const double* yb = yt + vs;
    double* o = out + i * shape.cols;
    std::size_t j = 0;
    for (; j + 4 <= shape.cols; j += 4) {
      const __m256d x0 = _mm256_loadu_pd(xt + j);
      const __m256d y0 = _mm256_loadu_pd(yt + j);
      const __m256d x1 = _mm256_loadu_pd(xt + j + 1);
      const __m256d y1 = _mm256_loadu_pd(yt + j + 1);
      const __m256d x2 = _mm256_loadu_pd(xb + j + 1);
      const __m256d y2 = _mm256_loadu_pd(yb + j + 1);
      const __m256d x3 = _mm256_loadu_pd(xb + j);
      const __m256d y3 = _mm256_loadu_pd(yb + j);
      const __m256d dx02 = _mm256_sub_pd(x2, x0);
      const __m256d dy02 = _mm256_sub_pd(y2, y0);
      const __m256d dx13 = _mm256_sub_pd(x3, x1);
      const __m256d dy13 = _mm256_sub_pd(y3, y1);
      const __m256d cross = _mm256_sub_pd(_mm256_mul_pd(dx02, dy13), _mm256_mul_pd(dx13, dy02));
      _mm256_storeu_pd(o + j, _mm256_mul_pd(half, cross));
    }
    for (; j < shape.cols; ++j) {
      const double dx02 = xb[j + 1] - xt[j];
      const double dy02 = yb[j + 1] - yt[j];
      const double dx13 = xb[j] - xt[j + 1];
      const double dy13 = yb[j] - yt[j + 1];
      o[j] = 0.5 * (dx02 * dy13 - dx13 * dy02);
    }
  }
}

void weighted_area_gradient_avx2(GridShape shape, const double* x, const double* y,
                                 const double* weight, GradientWorkspace& ws, double* gx,
                                 double* gy) {
  ws.resize(shape);
  const std::size_t vs = shape.cols + 1;
  const std::size_t ps = ws.stride();
  const __m256d half = _mm256_set1_pd(0.5);

  for (std::size_t i = 0; i < shape.rows; ++i) {
    const double* xt = x + i * vs;
    const double* yt = y + i * vs;
    const double* xb = xt + vs;
    const double* yb = yt + vs;
    const double* w = weight + i * shape.cols;
    const std::size_t row = (i + 1) * ps + 1;
    std::size_t j = 0;
    for (; j + 4 <= shape.cols; j += 4) {
      const __m256d h = _mm256_mul_pd(half, _mm256_loadu_pd(w + j));
      const __m256d dx13 = _mm256_sub_pd(_mm256_loadu_pd(xb + j), _mm256_loadu_pd(xt + j + 1));
      const __m256d dy13 = _mm256_sub_pd(_mm256_loadu_pd(yb + j), _mm256_loadu_pd(yt + j + 1));
      const __m256d dx02 = _mm256_sub_pd(_mm256_loadu_pd(xb + j + 1), _mm256_loadu_pd(xt + j));
      const __m256d dy02 = _mm256_sub_pd(_mm256_loadu_pd(yb + j + 1), _mm256_loadu_pd(yt + j));
      _mm256_storeu_pd(ws.ux() + row + j, _mm256_mul_pd(h, dx13));
      _mm256_storeu_pd(ws.uy() + row + j, _mm256_mul_pd(h, dy13));
      _mm256_storeu_pd(ws.vx() + row + j, _mm256_mul_pd(h, dx02));
      _mm256_storeu_pd(ws.vy() + row + j, _mm256_mul_pd(h, dy02));
    }
    fill_diagonals_scalar(shape, x, y, weight, ws, i, j);
  }

  for (std::size_t i = 0; i <= shape.rows; ++i) {
    const double* ux_lo = ws.ux() + (i + 1) * ps;
    const double* uy_lo = ws.uy() + (i + 1) * ps;
    const double* vx_lo = ws.vx() + (i + 1) * ps;
    const double* vy_lo = ws.vy() + (i + 1) * ps;
    const double* ux_hi = ws.ux() + i * ps;
    const double* uy_hi = ws.uy() + i * ps;
    const double* vx_hi = ws.vx() + i * ps;
    const double* vy_hi = ws.vy() + i * ps;
    std::size_t j = 0;
    for (; j + 4 <= vs; j += 4) {
      __m256d sx = _mm256_sub_pd(_mm256_loadu_pd(vy_lo + j), _mm256_loadu_pd(uy_lo + j + 1));
      sx = _mm256_add_pd(sx, _mm256_loadu_pd(uy_hi + j));
      sx = _mm256_sub_pd(sx, _mm256_loadu_pd(vy_hi + j + 1));
      __m256d sy = _mm256_sub_pd(_mm256_loadu_pd(ux_lo + j + 1), _mm256_loadu_pd(vx_lo + j));
      sy = _mm256_sub_pd(sy, _mm256_loadu_pd(ux_hi + j));
      sy = _mm256_add_pd(sy, _mm256_loadu_pd(vx_hi + j + 1));
      _mm256_storeu_pd(gx + i * vs + j, sx);
      _mm256_storeu_pd(gy + i * vs + j, sy);
    }
    gather_scalar(shape, ws, i, j, gx, gy);
  }
}

}  // namespace taco::simd::detail
