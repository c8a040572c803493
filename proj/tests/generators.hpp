#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "drsys/point.hpp"
#include "drsys/system.hpp"

namespace gen {

inline drs::PointSet random_subset(std::mt19937_64& rng, std::size_t universe, double p = 0.5) {
  std::bernoulli_distribution keep(p);
  drs::PointSet s;
  for (std::size_t i = 0; i < universe; ++i)
    if (keep(rng)) s.push_back(i);
  return s;
}

// Partial map on m points with coordinates 0, 1/m, 2/m, ...
inline drs::PartialSystem table(std::mt19937_64& rng, std::size_t m, double undefined_rate = 0.25,
                                bool injective = false) {
  std::vector<double> xs;
  for (std::size_t i = 0; i < m; ++i) xs.push_back(static_cast<double>(i) / static_cast<double>(m));
  std::vector<std::optional<std::size_t>> map(m);
  std::bernoulli_distribution undefined(undefined_rate);
  std::uniform_int_distribution<std::size_t> target(0, m - 1);
  std::vector<std::size_t> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < m; ++i) {
    if (undefined(rng)) continue;
    map[i] = injective ? perm[i] : target(rng);
  }
  return drs::table_system("gen", xs, map);
}

inline std::size_t size_between(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace gen
