#pragma once

#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

// Dense matrix over the rationals, sized for desk-scale elimination.
class RatMatrix {
 public:
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  // Exact rank via fraction-free (Bareiss) elimination on the
  // denominator-cleared integer matrix.
  int rank() const;

  // Reduced row echelon form in place; returns the pivot columns in order.
  std::vector<int> rref_in_place();

  // Canonical nullspace basis: one vector per free column, unit coefficient
  // there, zeros at all other free columns (reduced echelon basis). When
  // free_cols is given it receives the free column of each basis vector.
  std::vector<std::vector<Rational>> nullspace(std::vector<int>* free_cols = nullptr) const;

 private:
  int rows_;
  int cols_;
  std::vector<Rational> a_;
};

}  // namespace carnot
