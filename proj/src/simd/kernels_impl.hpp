#pragma once

#include "taco/simd/kernels.hpp"

namespace taco::simd::detail {

void cell_areas_scalar(GridShape shape, const double* x, const double* y, double* out);
void weighted_area_gradient_scalar(GridShape shape, const double* x, const double* y,
                                   const double* weight, GradientWorkspace& ws, double* gx,
                                   double* gy);

// Row tails shared with the vector variants.
void fill_diagonals_scalar(GridShape shape, const double* x, const double* y,
                           const double* weight, GradientWorkspace& ws, std::size_t i,
                           std::size_t j_begin);
void gather_scalar(GridShape shape, GradientWorkspace& ws, std::size_t i, std::size_t j_begin,
                   double* gx, double* gy);

#if defined(TACO_HAVE_AVX2)
void cell_areas_avx2(GridShape shape, const double* x, const double* y, double* out);
void weighted_area_gradient_avx2(GridShape shape, const double* x, const double* y,
                                 const double* weight, GradientWorkspace& ws, double* gx,
                                 double* gy);
#endif

}  // namespace taco::simd::detail
