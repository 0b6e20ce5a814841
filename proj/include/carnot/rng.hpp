#pragma once

#include <cstdint>
#include <vector>

#include "carnot/poly.hpp"

namespace carnot {

// splitmix64: the fixed generator behind all seeded fuzzing. Chosen for its
// trivial, platform-independent specification (see README for the exact
// recurrence and the sampling procedure built on top of it).
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

// All monomials over the group coordinates (copy 0) with weighted degree
// <= max_weighted_degree, in canonical order.
std::vector<Monomial> enumerate_monomials(const std::vector<int>& layer_dims,
                                          int max_weighted_degree);

// Deterministic random polynomial: for each monomial in canonical order draw
// a keep-test, then an integer coefficient in [-9, 9]. Identical inputs give
// identical polynomials on every platform.
Poly random_poly(uint64_t seed, const std::vector<int>& layer_dims,
                 int max_weighted_degree);

}  // namespace carnot
