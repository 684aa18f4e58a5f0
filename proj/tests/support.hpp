#pragma once

// Random generators shared by the property tests.

#include <cmath>
#include <random>
#include <vector>

#include "tame/boxset.hpp"

namespace tame::testing {

inline const std::vector<double>& endpoint_pool() {
  static const std::vector<double> pool{0.0, 0.5, 1.0, 1.5, 2.0, 3.0, std::sqrt(2.0), 0.25, 4.0};
  return pool;
}

inline double pick_endpoint(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, endpoint_pool().size() - 1);
  return endpoint_pool()[pick(rng)];
}

inline Interval random_interval(std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution rare(0.15);
  const double a = pick_endpoint(rng);
  if (rare(rng)) return Interval::point(a);
  double b = pick_endpoint(rng);
  while (b == a) b = pick_endpoint(rng);
  return Interval(std::min(a, b), std::max(a, b), coin(rng), coin(rng));
}

inline Cell random_cell(std::mt19937_64& rng, std::size_t d) {
  Cell c;
  for (std::size_t j = 0; j < d; ++j) c.factors.push_back(random_interval(rng));
  return c;
}

/// Canonical union of 1..max_cells random bounded cells.
inline BoxComplex random_complex(std::mt19937_64& rng, std::size_t d, std::size_t max_cells = 4) {
  std::uniform_int_distribution<std::size_t> count(1, max_cells);
  std::vector<Cell> cells;
  for (std::size_t n = count(rng); n > 0; --n) cells.push_back(random_cell(rng, d));
  return canonicalize(d, cells);
}

/// Points biased onto endpoint values so that boundaries get exercised.
inline std::vector<double> random_point(std::mt19937_64& rng, std::size_t d) {
  std::bernoulli_distribution on_grid(0.5);
  std::uniform_real_distribution<double> anywhere(-0.5, 4.5);
  std::vector<double> x(d);
  for (auto& v : x) v = on_grid(rng) ? pick_endpoint(rng) : anywhere(rng);
  return x;
}

}  // namespace tame::testing
