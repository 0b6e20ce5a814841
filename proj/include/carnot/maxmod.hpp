#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carnot/group.hpp"
#include "carnot/identities.hpp"

namespace carnot {

// Exact rational basis of the weighted-homogeneous solutions of
// Delta_H P = 0 at a fixed degree, in reduced echelon form over the
// canonical monomial order.
struct HarmonicBasis {
  std::string group;
  int weighted_degree = 0;
  std::vector<Poly> basis;
  std::vector<Monomial> pivots;  // distinguished monomial of each element
  int dimension = 0;
};

HarmonicBasis harmonic_basis(const GroupLaw& g, int d);

// Exact remainder of p after reduction against the basis; zero iff p lies in
// the span.
Poly reduce_against(const HarmonicBasis& basis, Poly p);

// The solid harmonics entering the counterexample, on H^1 coordinates
// (z1, z2, s2_1) = (x, y, sigma).
Poly solid_harmonic_1();
Poly solid_harmonic_3();
Poly solid_harmonic_5();

// The nonlinear Delta_H-harmonic polynomial whose left carre du champ has a
// strict interior maximum at the identity: P1 + P3 - 21 P5.
Poly counterexample_f();

// Eight exact checks pinning the whole counterexample computation chain.
CheckReport verify_counterexample();
// Same checks run against a caller-supplied candidate (mutation testing).
CheckReport verify_counterexample(const Poly& f);

// Certificate that the left carre du champ stays strictly below 1 on the
// punctured euclidean ball of the given radius.
struct RadiusCertificate {
  Rational radius;
  Rational bound_constant;  // sum |c_a| * radius^(edeg(a)-2), strictly < 6
  std::vector<std::pair<Point, Rational>> grid_samples;

  std::string to_json_text() const;
};

RadiusCertificate strict_max_radius(const Poly& f);
// Re-derivation of everything the certificate asserts.
bool revalidate(const RadiusCertificate& cert, const Poly& f);

// First point (in deterministic dyadic grid order) with euclidean norm < r
// where the polynomial exceeds the threshold.
std::optional<Point> find_excess_point(const Poly& value, const Rational& r,
                                       const Rational& threshold, int max_level = 6);

// A rational point with euclidean norm < r where the right carre du champ of
// f exceeds 1. Throws NoWitnessFound when the grid is exhausted.
Point right_excess_witness(const Poly& f, const Rational& r);

// Certifies that Delta_H(|grad_H f|^2) has a strictly negative constant term
// and no weighted-degree-1 part, so subharmonicity of the left carre du champ
// fails near the identity.
CheckReport left_subharmonicity_failure(const GroupLaw& g, const Poly& f);

}  // namespace carnot
