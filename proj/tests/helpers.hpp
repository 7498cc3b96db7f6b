#pragma once

#include <cstdint>
#include <random>

#include "specdist/matrix.hpp"

namespace testutil {

inline specdist::ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  specdist::ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

inline specdist::ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  const auto a = random_matrix(n, n, seed);
  return specdist::cplx(0.5) * (a + a.adjoint());
}

}  // namespace testutil
