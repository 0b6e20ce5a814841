#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/matrix.hpp"
#include "carnot/rng.hpp"

using namespace carnot;

namespace {

RatMatrix from_rows(const std::vector<std::vector<long>>& rows, int cols) {
  RatMatrix m(static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = Rational(rows[i][size_t(j)]);
  return m;
}

}  // namespace

TEST_CASE("rank") {
  CHECK(from_rows({{1, 2}, {2, 4}}, 2).rank() == 1);
  CHECK(from_rows({{1, 0}, {0, 1}}, 2).rank() == 2);
  CHECK(from_rows({{0, 0}, {0, 0}}, 2).rank() == 0);
  CHECK(from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}, 3).rank() == 2);
  // fractional entries
  RatMatrix m(2, 2);
  m.at(0, 0) = Rational(1, 2);
  m.at(0, 1) = Rational(1, 3);
  m.at(1, 0) = Rational(3, 2);
  m.at(1, 1) = Rational(1);
  CHECK(m.rank() == 1);
}

TEST_CASE("rref") {
  RatMatrix m = from_rows({{2, 4, 6}, {1, 3, 5}}, 3);
  const auto pivots = m.rref_in_place();
  REQUIRE(pivots == std::vector<int>{0, 1});
  CHECK(m.at(0, 0) == Rational(1));
  CHECK(m.at(0, 1) == Rational(0));
  CHECK(m.at(0, 2) == Rational(-1));
  CHECK(m.at(1, 0) == Rational(0));
  CHECK(m.at(1, 1) == Rational(1));
  CHECK(m.at(1, 2) == Rational(2));
}

TEST_CASE("nullspace kills the matrix") {
  // hand case: x + 2y - z = 0, free columns y(.. pivot 0) -> canonical basis
  RatMatrix m = from_rows({{1, 2, -1}}, 3);
  std::vector<int> free_cols;
  const auto basis = m.nullspace(&free_cols);
  REQUIRE(basis.size() == 2);
  CHECK(free_cols == std::vector<int>{1, 2});
  CHECK(basis[0] == std::vector<Rational>{Rational(-2), Rational(1), Rational(0)});
  CHECK(basis[1] == std::vector<Rational>{Rational(1), Rational(0), Rational(1)});

  // property: A v = 0 exactly for random integer matrices
  SplitMix64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int rows = 1 + static_cast<int>(rng.next() % 4);
    const int cols = 1 + static_cast<int>(rng.next() % 5);
    RatMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        a.at(i, j) = Rational(static_cast<long>(rng.next() % 11) - 5);
    const auto ns = a.nullspace();
    CHECK(static_cast<int>(ns.size()) == cols - a.rank());
    for (const auto& v : ns)
      for (int i = 0; i < rows; ++i) {
        Rational dot(0);
        for (int j = 0; j < cols; ++j) dot += a.at(i, j) * v[size_t(j)];
        CHECK(dot.is_zero());
      }
  }
}
