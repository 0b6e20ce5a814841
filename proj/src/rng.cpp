#include "carnot/rng.hpp"

#include <algorithm>

#include "carnot/errors.hpp"

namespace carnot {

std::vector<Monomial> enumerate_monomials(const std::vector<int>& layer_dims,
                                          int max_weighted_degree) {
  if (max_weighted_degree < 0) throw Error("enumerate_monomials: negative degree bound");
  std::vector<VarId> vars;
  for (int j = 1; j <= static_cast<int>(layer_dims.size()); ++j)
    for (int l = 1; l <= layer_dims[static_cast<size_t>(j - 1)]; ++l)
      vars.push_back(VarId{j, l, 0});

  std::vector<Monomial> acc{Monomial()};
  for (const VarId v : vars) {
    std::vector<Monomial> next;
    for (const Monomial& m : acc) {
      const int room = max_weighted_degree - m.weighted_degree();
      for (int e = 0; e * v.weight() <= room; ++e)
        next.push_back(e == 0 ? m : m.times(Monomial(v, e)));
    }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

Poly random_poly(uint64_t seed, const std::vector<int>& layer_dims,
                 int max_weighted_degree) {
  SplitMix64 rng(seed);
  Poly p;
  for (const Monomial& m : enumerate_monomials(layer_dims, max_weighted_degree)) {
    if (rng.next() % 3 != 0) continue;
    const int c = static_cast<int>(rng.next() % 19) - 9;
    if (c != 0) p.add_term(m, Rational(c));
  }
  return p;
}

}  // namespace carnot
