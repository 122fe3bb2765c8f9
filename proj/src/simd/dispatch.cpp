#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace taco::simd {

void GradientWorkspace::resize(GridShape shape) {
  if (shape.rows == shape_.rows && shape.cols == shape_.cols && !ux_.empty()) return;
  shape_ = shape;
  stride_ = shape.cols + 2;
  const std::size_t n = (shape.rows + 2) * stride_;
  ux_.assign(n, 0.0);
  uy_.assign(n, 0.0);
  vx_.assign(n, 0.0);
  vy_.assign(n, 0.0);
}

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "scalar";
}

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, &detail::cell_areas_scalar,
                                 &detail::weighted_area_gradient_scalar};
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(TACO_HAVE_AVX2)
  static const KernelTable table{Isa::Avx2, &detail::cell_areas_avx2,
                                 &detail::weighted_area_gradient_avx2};
  return &table;
#else
  return nullptr;
#endif
}

namespace {

bool cpu_has_avx2() {
#if defined(TACO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select_kernels() {
  if (const char* env = std::getenv("TACO_SIMD"); env && std::string_view(env) == "scalar") {
    return scalar_kernels();
  }
  if (cpu_has_avx2()) return *avx2_kernels();
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (cpu_has_avx2()) out.push_back(avx2_kernels());
  return out;
}

void cell_areas(GridShape shape, std::span<const double> x, std::span<const double> y,
                std::span<double> out) {
  active_kernels().cell_areas(shape, x.data(), y.data(), out.data());
}

void weighted_area_gradient(GridShape shape, std::span<const double> x,
                            std::span<const double> y, std::span<const double> weight,
                            GradientWorkspace& ws, std::span<double> gx, std::span<double> gy) {
  active_kernels().weighted_area_gradient(shape, x.data(), y.data(), weight.data(), ws,
                                          gx.data(), gy.data());
}

}  // namespace taco::simd
