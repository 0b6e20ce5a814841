#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "carnot/poly.hpp"
#include "carnot/report.hpp"

namespace carnot {

struct BracketTerm {
  VarId target;
  Rational coeff;
};

// Stratified nilpotent Lie algebra given by layer dimensions and sparse
// structure constants. Brackets are stored only for ordered basis pairs
// (left < right); the antisymmetric completion is implicit.
class StratifiedLieAlgebra {
 public:
  StratifiedLieAlgebra(std::vector<int> layer_dims, std::string name);

  // spec in {heisenberg:n, abelian:n, engel, free2:m}
  static StratifiedLieAlgebra builtin(const std::string& spec);
  static StratifiedLieAlgebra from_json_text(const std::string& text);
  static StratifiedLieAlgebra load_file(const std::string& path);
  std::string to_json_text() const;

  // Left must precede right in basis order; duplicate pairs are rejected.
  void add_bracket(VarId left, VarId right, std::vector<BracketTerm> result);

  const std::string& name() const { return name_; }
  int step() const { return static_cast<int>(layer_dims_.size()); }
  int dim() const;
  int horizontal_dim() const { return layer_dims_[0]; }
  int layer_dim(int j) const { return layer_dims_[static_cast<size_t>(j - 1)]; }
  const std::vector<int>& layer_dims() const { return layer_dims_; }
  bool is_basis_id(VarId v) const;
  std::vector<VarId> basis() const;  // all (layer, index) in graded order

  // [e_a, e_b] as a sparse vector, antisymmetry applied.
  std::vector<BracketTerm> basis_bracket(VarId a, VarId b) const;
  const std::map<std::pair<VarId, VarId>, std::vector<BracketTerm>>& brackets() const {
    return brackets_;
  }

  // Pass/fail entries for antisymmetry closure, Jacobi, grading and
  // stratification; every failure carries a witness.
  CheckReport validate() const;

 private:
  std::vector<int> layer_dims_;
  std::map<std::pair<VarId, VarId>, std::vector<BracketTerm>> brackets_;
  std::string name_;
};

// Lie algebra element with polynomial coefficients, so the BCH series can be
// evaluated on formal coordinate variables.
struct AlgebraElement {
  const StratifiedLieAlgebra* algebra = nullptr;
  std::map<VarId, Poly> coeffs;  // only nonzero entries

  static AlgebraElement zero(const StratifiedLieAlgebra& a);
  static AlgebraElement basis_vector(const StratifiedLieAlgebra& a, VarId v);
  // The generic element whose coefficients are the coordinate variables of
  // the given copy.
  static AlgebraElement formal_point(const StratifiedLieAlgebra& a, int copy);

  void add(VarId v, const Poly& c);
  AlgebraElement& operator+=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    return a += b;
  }
  AlgebraElement scaled(const Poly& c) const;
  AlgebraElement operator-() const { return scaled(Poly(-1)); }
  bool is_zero() const;
  bool operator==(const AlgebraElement& o) const;
};

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

// Baker-Campbell-Hausdorff product log(exp x . exp y), evaluated exactly by
// the Dynkin commutator expansion truncated at the algebra's step.
AlgebraElement bch(const AlgebraElement& x, const AlgebraElement& y);

}  // namespace carnot
