#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "taco/table.hpp"

namespace taco::testing {

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Values log-uniform in [1, 10^decades].
inline Table random_table(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                          double decades = 3.0) {
  Grid g(rows, cols);
  for (double& v : g.data()) v = std::pow(10.0, decades * unit(rng));
  return make_table(std::move(g));
}

// Random sizes in 1..max_side per axis.
inline Table random_table(std::mt19937_64& rng, std::size_t max_side = 8, double decades = 3.0) {
  const std::size_t m = 1 + rng() % max_side;
  const std::size_t n = 1 + rng() % max_side;
  return random_table(rng, m, n, decades);
}

}  // namespace taco::testing
