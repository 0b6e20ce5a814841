#pragma once

#include <optional>
#include <string>

#include "carnot/group.hpp"

namespace carnot {

// Outcome of one polynomial identity check; the identity holds iff the
// residual is the zero polynomial (structural equality).
struct IdentityResidual {
  std::string identity_name;
  std::string group;
  std::optional<long> seed;
  std::optional<int> degree;
  Poly residual;

  bool is_zero() const { return residual.is_zero(); }
  std::string to_json_text() const;
};

// Sum of X_i(X_i f) over the horizontal layer.
Poly horizontal_laplacian(const GroupLaw& g, const Poly& f);

// Sum of (X_i f)^2 (left) or the right-invariant analogue.
Poly carre_du_champ(const GroupLaw& g, const Poly& f, Side side);

// Residual of the right Bochner identity
//   Delta_H(|~grad f|^2) - 2 <~grad f, ~grad(Delta_H f)> - 2 sum_i |~grad(X_i f)|^2.
IdentityResidual bochner_right_residual(const GroupLaw& g, const Poly& f,
                                        std::optional<long> seed = {},
                                        std::optional<int> degree = {});

// With Delta_H f constant the Bochner right-hand side collapses to an exact
// sum of squares; the report carries the squared entries as witnesses.
CheckReport bochner_right_nonneg(const GroupLaw& g, const Poly& f);

// Step-2 difference between the two carres du champ, under the convention
// [e_i, e_j] = sum_l b^l_ij eps_l for i < j.
IdentityResidual step2_difference_residual(const GroupLaw& g, const Poly& f,
                                           std::optional<long> seed = {},
                                           std::optional<int> degree = {});

// Flat Bochner identity on abelian groups.
IdentityResidual euclidean_bochner_residual(const GroupLaw& g, const Poly& f,
                                            std::optional<long> seed = {},
                                            std::optional<int> degree = {});

// Reconstructs f from f(e) and the dilation generator via the Euler identity
// applied per weighted-homogeneous component; the identity map on polynomials.
Poly radial_reconstruct(const GroupLaw& g, const Poly& f);

}  // namespace carnot
