#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "carnot/lie_algebra.hpp"
#include "carnot/poly.hpp"

namespace carnot {

// Finite-order linear differential operator with polynomial coefficients,
// stored as sparse (derivative multi-index -> coefficient) pairs.
class DiffOp {
 public:
  DiffOp() = default;
  static DiffOp partial(VarId v);
  static DiffOp parse(const std::string& text);

  bool is_zero() const { return terms_.empty(); }
  int order() const;
  const std::map<Monomial, Poly>& terms() const { return terms_; }
  Poly coefficient(const Monomial& idx) const;

  void add_term(const Monomial& idx, const Poly& coeff);
  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  DiffOp scaled(const Poly& c) const;  // left multiplication by a function

  Poly apply(const Poly& f) const;
  // Operator composition via Leibniz expansion of the coefficients.
  DiffOp compose(const DiffOp& o) const;

  bool operator==(const DiffOp& o) const { return terms_ == o.terms_; }
  std::string str() const;  // signed sum of "coef*d[v,...]" terms

 private:
  std::map<Monomial, Poly> terms_;
};

DiffOp commutator(const DiffOp& a, const DiffOp& b);

enum class Side { left, right };

// Exact polynomial group law in exponential coordinates, derived from the
// BCH series. Component i gives coordinate i of p . p', where p carries the
// copy-0 variables and p' the copy-1 variables.
struct GroupLaw {
  StratifiedLieAlgebra algebra;
  PolyMap law;

  const Poly& component(VarId v) const;
};

GroupLaw derive_group_law(const StratifiedLieAlgebra& a);

// One operator per basis vector, in graded basis order.
std::vector<DiffOp> invariant_fields(const GroupLaw& g, Side side);
// The m horizontal (layer-1) fields only.
std::vector<DiffOp> horizontal_fields(const GroupLaw& g, Side side);

// Infinitesimal generator of the dilations: sum of j * v * d/dv over layers.
DiffOp generator_field(const GroupLaw& g);

struct ZDecomposition {
  std::vector<std::pair<VarId, Poly>> q;      // Q_{j,l} in basis order
  std::vector<std::pair<VarId, DiffOp>> frame;  // the left-invariant frame
};

// Frame decomposition of the dilation generator by degree-graded
// back-substitution; the residual is checked to vanish structurally.
ZDecomposition z_decompose(const GroupLaw& g);

// Smallest commutator depth at which the given layer-1 fields span the whole
// tangent space at the identity.
int bracket_generating_step(const std::vector<DiffOp>& horizontal, const GroupLaw& g);

// Max-gauge data of a point: the largest absolute coordinate per layer.
// rho(p) < r holds iff every layer magnitude satisfies M_j < r^j, an exact
// rational comparison.
struct GaugeValue {
  Point point;
  std::vector<Rational> layer_magnitudes;  // indexed by layer - 1

  bool inside(const Rational& r) const;  // throws NonpositiveRadius
};

GaugeValue gauge_of(const Point& p);

// Exact max-gauge ball membership: |coord| < r^weight per coordinate.
bool gauge_inside(const Point& p, const Rational& r);

}  // namespace carnot
