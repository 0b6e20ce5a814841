#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "carnot/rational.hpp"
#include "carnot/varid.hpp"

namespace carnot {

// Sparse exponent vector. Entries are sorted by VarId and strictly positive.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(VarId v, int e = 1);
  static Monomial from_exponents(std::vector<std::pair<VarId, int>> exps);

  int weighted_degree() const;
  int euclidean_degree() const;
  int exponent(VarId v) const;
  bool is_unit() const { return exps_.empty(); }
  const std::vector<std::pair<VarId, int>>& exponents() const { return exps_; }

  Monomial times(const Monomial& o) const;

  // Canonical order: by weighted degree, then lexicographically on the
  // (variable, exponent) sequence with smaller variables and larger
  // exponents first. Structural equality equals mathematical equality.
  bool operator<(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

  std::string str() const;  // "z1^2*z2" etc., "1" for the unit

 private:
  std::vector<std::pair<VarId, int>> exps_;
};

enum class Grading { weighted, euclidean };

// Sparse multivariate polynomial with exact rational coefficients, kept in
// canonical form: no zero coefficients, terms in canonical monomial order.
class Poly {
 public:
  Poly() = default;
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Rational& c);             // NOLINT(google-explicit-constructor)
  static Poly variable(VarId v);
  static Poly monomial(const Monomial& m, const Rational& c);
  static Poly parse(const std::string& text);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int term_count() const { return static_cast<int>(terms_.size()); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;
  std::set<VarId> variables() const;

  // Degree of the zero polynomial is reported as -1.
  int degree(Grading g) const;
  int min_degree(Grading g) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Rational& c) const;
  Poly pow(int e) const;  // e >= 0

  Poly differentiated(VarId v) const;
  // Substitution requires an image for every variable present.
  Poly substituted(const std::map<VarId, Poly>& images) const;
  Rational evaluated(const std::map<VarId, Rational>& point) const;
  std::map<int, Poly> graded_components(Grading g) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  std::string str() const;  // canonical text form, bit-exact round trip

  void add_term(const Monomial& m, const Rational& c);

 private:
  std::map<Monomial, Rational> terms_;
};

// Polynomial map: one component per output coordinate.
struct PolyMap {
  std::vector<Poly> components;
  int input_arity = 0;
};

using Point = std::map<VarId, Rational>;

}  // namespace carnot
