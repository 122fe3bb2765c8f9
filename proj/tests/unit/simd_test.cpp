#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "random_tables.hpp"
#include "taco/mesh.hpp"
#include "taco/simd/kernels.hpp"

using namespace taco;

namespace {

Mesh wobbly_mesh(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::vector<double> rc(rows + 1), cc(cols + 1);
  for (std::size_t i = 0; i <= rows; ++i) rc[i] = 300.0 * static_cast<double>(i) / rows;
  for (std::size_t j = 0; j <= cols; ++j) cc[j] = 400.0 * static_cast<double>(j) / cols;
  Mesh m = Mesh::rectilinear(rc, cc);
  for (std::size_t i = 1; i < rows; ++i) {
    for (std::size_t j = 1; j < cols; ++j) {
      const Point p = m.vertex(i, j);
      m.set_vertex(i, j, {p.x + (testing::unit(rng) - 0.5) * 100.0 / cols,
                          p.y + (testing::unit(rng) - 0.5) * 75.0 / rows});
    }
  }
  return m;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("every available kernel variant matches the scalar reference bit for bit") {
  const auto variants = simd::available_kernels();
  REQUIRE(!variants.empty());
  CHECK(variants.front()->isa == simd::Isa::Scalar);
  const auto& ref = simd::scalar_kernels();

  std::mt19937_64 rng(11);
  // Widths straddle the vector length so tails are exercised.
  for (std::size_t rows : {1u, 2u, 3u, 7u}) {
    for (std::size_t cols : {1u, 2u, 3u, 4u, 5u, 8u, 9u, 13u}) {
      const Mesh m = wobbly_mesh(rng, rows, cols);
      const simd::GridShape shape = m.shape();
      std::vector<double> weight(shape.cell_count());
      for (double& w : weight) w = testing::unit(rng) * 4.0 - 2.0;

      std::vector<double> ref_areas(shape.cell_count());
      ref.cell_areas(shape, m.xs().data(), m.ys().data(), ref_areas.data());
      simd::GradientWorkspace ref_ws;
      std::vector<double> ref_gx(shape.vertex_count()), ref_gy(shape.vertex_count());
      ref.weighted_area_gradient(shape, m.xs().data(), m.ys().data(), weight.data(), ref_ws,
                                 ref_gx.data(), ref_gy.data());

      for (const auto* k : variants) {
        CAPTURE(simd::to_string(k->isa));
        CAPTURE(rows);
        CAPTURE(cols);
        std::vector<double> areas(shape.cell_count());
        k->cell_areas(shape, m.xs().data(), m.ys().data(), areas.data());
        CHECK(same_bits(areas, ref_areas));
        simd::GradientWorkspace ws;
        std::vector<double> gx(shape.vertex_count()), gy(shape.vertex_count());
        k->weighted_area_gradient(shape, m.xs().data(), m.ys().data(), weight.data(), ws,
                                  gx.data(), gy.data());
        CHECK(same_bits(gx, ref_gx));
        CHECK(same_bits(gy, ref_gy));
      }
    }
  }
}

TEST_CASE("dispatch honours TACO_SIMD=scalar") {
  const char* env = std::getenv("TACO_SIMD");
  if (env && std::string(env) == "scalar") {
    CHECK(simd::active_kernels().isa == simd::Isa::Scalar);
  } else if (simd::available_kernels().size() > 1) {
    CHECK(simd::active_kernels().isa == simd::Isa::Avx2);
  }
}

TEST_CASE("cell areas of a rectilinear mesh are width times height") {
  const Mesh m = Mesh::rectilinear({0.0, 1.0, 3.5}, {0.0, 2.0, 2.5, 6.0});
  const auto a = signed_cell_areas(m);
  const double expect[] = {2.0, 0.5, 3.5, 5.0, 1.25, 8.75};
  for (std::size_t c = 0; c < 6; ++c) CHECK(a[c] == doctest::Approx(expect[c]).epsilon(1e-15));
}

TEST_CASE("gradient of the total area vanishes in the interior") {
  // Sum of all cell areas is the rectangle's area whatever the interior does.
  std::mt19937_64 rng(3);
  const Mesh m = wobbly_mesh(rng, 4, 5);
  std::vector<double> ones(20, 1.0), gx(30), gy(30);
  simd::GradientWorkspace ws;
  simd::weighted_area_gradient(m.shape(), m.xs(), m.ys(), ones, ws, gx, gy);
  for (std::size_t i = 1; i < 4; ++i) {
    for (std::size_t j = 1; j < 5; ++j) {
      CHECK(std::abs(gx[m.index(i, j)]) < 1e-9);
      CHECK(std::abs(gy[m.index(i, j)]) < 1e-9);
    }
  }
}
