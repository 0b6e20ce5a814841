#include "carnot/matrix.hpp"

#include <gmpxx.h>

namespace carnot {

namespace {

// Denominator-cleared integer copy: each row is scaled by the lcm of its
// entries' denominators (row scaling preserves rank and row space).
std::vector<std::vector<mpz_class>> integer_rows(const RatMatrix& m) {
  std::vector<std::vector<mpz_class>> rows(static_cast<size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) {
    mpz_class l(1);
    for (int j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).raw().get_den_mpz_t());
    rows[static_cast<size_t>(i)].resize(static_cast<size_t>(m.cols()));
    for (int j = 0; j < m.cols(); ++j) {
      const mpq_class& q = m.at(i, j).raw();
      rows[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          q.get_num() * (l / q.get_den());
    }
  }
  return rows;
}

}  // namespace

int RatMatrix::rank() const {
  auto a = integer_rows(*this);
  const int nr = rows_, nc = cols_;
  int rank = 0;
  mpz_class prev(1);
  for (int col = 0; col < nc && rank < nr; ++col) {
    int pivot = -1;
    for (int i = rank; i < nr; ++i)
      if (a[size_t(i)][size_t(col)] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[size_t(rank)], a[size_t(pivot)]);
    // One-step Bareiss update; divisions are exact.
    for (int i = rank + 1; i < nr; ++i) {
      for (int j = col + 1; j < nc; ++j) {
        mpz_class t = a[size_t(rank)][size_t(col)] * a[size_t(i)][size_t(j)] -
                      a[size_t(i)][size_t(col)] * a[size_t(rank)][size_t(j)];
        mpz_divexact(a[size_t(i)][size_t(j)].get_mpz_t(), t.get_mpz_t(),
                     prev.get_mpz_t());
      }
      a[size_t(i)][size_t(col)] = 0;
    }
    prev = a[size_t(rank)][size_t(col)];
    ++rank;
  }
  return rank;
}

std::vector<int> RatMatrix::rref_in_place() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int pivot = -1;
    for (int i = row; i < rows_; ++i)
      if (!at(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int j = 0; j < cols_; ++j) std::swap(at(row, j), at(pivot, j));
    const Rational inv = Rational(1) / at(row, col);
    for (int j = col; j < cols_; ++j) at(row, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == row || at(i, col).is_zero()) continue;
      const Rational f = at(i, col);
      for (int j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rational>> RatMatrix::nullspace(std::vector<int>* free_cols) const {
  RatMatrix r = *this;
  const std::vector<int> pivots = r.rref_in_place();
  std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
  for (const int c : pivots) is_pivot[static_cast<size_t>(c)] = true;

  if (free_cols) free_cols->clear();
  std::vector<std::vector<Rational>> basis;
  for (int free_col = 0; free_col < cols_; ++free_col) {
    if (is_pivot[static_cast<size_t>(free_col)]) continue;
    std::vector<Rational> v(static_cast<size_t>(cols_), Rational(0));
    v[static_cast<size_t>(free_col)] = Rational(1);
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      v[static_cast<size_t>(pivots[pr])] = -r.at(static_cast<int>(pr), free_col);
    basis.push_back(std::move(v));
    if (free_cols) free_cols->push_back(free_col);
  }
  return basis;
}

}  // namespace carnot
