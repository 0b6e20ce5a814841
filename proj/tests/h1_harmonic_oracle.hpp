#pragma once

// Independent brute-force oracle for harmonic-polynomial dimensions on H^1:
// dense monomials as exponent triples, the two vector fields spelled out by
// hand, and a plain Gauss-Jordan nullity count. Shares nothing with
// Poly/DiffOp/harmonic_basis.

#include <map>
#include <tuple>
#include <vector>

#include "carnot/rational.hpp"

namespace h1_oracle {

using Mono3 = std::tuple<int, int, int>;  // x^a y^b sigma^c
using Dense = std::map<Mono3, carnot::Rational>;

inline void dense_add(Dense& p, Mono3 m, const carnot::Rational& c) {
  if (c.is_zero()) return;
  p[m] += c;
  if (p[m].is_zero()) p.erase(m);
}

inline Dense dense_x1(const Dense& p) {  // d/dx - (y/2) d/dsigma
  Dense r;
  for (const auto& [m, c] : p) {
    const auto [a, b, s] = m;
    if (a > 0) dense_add(r, {a - 1, b, s}, c * carnot::Rational(a));
    if (s > 0) dense_add(r, {a, b + 1, s - 1}, c * carnot::Rational(-s, 2));
  }
  return r;
}

inline Dense dense_x2(const Dense& p) {  // d/dy + (x/2) d/dsigma
  Dense r;
  for (const auto& [m, c] : p) {
    const auto [a, b, s] = m;
    if (b > 0) dense_add(r, {a, b - 1, s}, c * carnot::Rational(b));
    if (s > 0) dense_add(r, {a + 1, b, s - 1}, c * carnot::Rational(s, 2));
  }
  return r;
}

inline Dense dense_lap(const Dense& p) {
  Dense r;
  for (const auto& [m, c] : dense_x1(dense_x1(p))) dense_add(r, m, c);
  for (const auto& [m, c] : dense_x2(dense_x2(p))) dense_add(r, m, c);
  return r;
}

// Nullity of the weighted-degree-d laplacian matrix; -1 when an image
// monomial falls outside the expected degree (cannot happen).
inline int harmonic_dim(int d) {
  using carnot::Rational;
  std::vector<Mono3> dom, img;
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b)
      for (int s = 0; a + b + 2 * s <= d; ++s) {
        if (a + b + 2 * s == d) dom.push_back({a, b, s});
        if (d >= 2 && a + b + 2 * s == d - 2) img.push_back({a, b, s});
      }
  std::vector<std::vector<Rational>> m(img.size(),
                                       std::vector<Rational>(dom.size(), Rational(0)));
  for (size_t c = 0; c < dom.size(); ++c) {
    Dense mono;
    mono[dom[c]] = Rational(1);
    for (const auto& [mo, co] : dense_lap(mono)) {
      size_t row = 0;
      while (row < img.size() && !(img[row] == mo)) ++row;
      if (row == img.size()) return -1;
      m[row][c] = co;
    }
  }
  size_t rank = 0;
  for (size_t col = 0; col < dom.size() && rank < img.size(); ++col) {
    size_t piv = rank;
    while (piv < img.size() && m[piv][col].is_zero()) ++piv;
    if (piv == img.size()) continue;
    std::swap(m[rank], m[piv]);
    const Rational inv = Rational(1) / m[rank][col];
    for (auto& v : m[rank]) v *= inv;
    for (size_t i = 0; i < img.size(); ++i) {
      if (i == rank || m[i][col].is_zero()) continue;
      const Rational factor = m[i][col];
      for (size_t jj = 0; jj < dom.size(); ++jj) m[i][jj] -= factor * m[rank][jj];
    }
    ++rank;
  }
  return static_cast<int>(dom.size() - rank);
}

}  // namespace h1_oracle
