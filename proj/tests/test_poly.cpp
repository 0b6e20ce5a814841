#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/errors.hpp"
#include "carnot/poly.hpp"
#include "carnot/rng.hpp"

using namespace carnot;

namespace {

const VarId X = VarId::z(1);
const VarId Y = VarId::z(2);
const VarId S = VarId::s(2, 1);

Poly px() { return Poly::variable(X); }
Poly py() { return Poly::variable(Y); }

// Eq-style counterexample polynomial, kept local so exactcore tests do not
// depend on maxmod.
Poly sample_f() {
  return Poly::parse("z1 + 6*z2*s2_1 - z1^3 - 21*z1*s2_1^2 + 21/8*z1*z2^4 "
                     "- 7*z2^3*s2_1 + 21/40*z1^5");
}

}  // namespace

TEST_CASE("arithmetic basics") {
  CHECK((px() + py()) * (px() - py()) == px() * px() - py() * py());
  const Poly f = sample_f();
  CHECK(f + Poly() == f);
  // hand-expanded: (1 - 3x^2)(1 + 3x^2) = 1 - 9x^4
  const Poly a = Poly(1) - Poly::parse("3*z1^2");
  const Poly b = Poly(1) + Poly::parse("3*z1^2");
  CHECK(a * b == Poly::parse("1 - 9*z1^4"));
}

TEST_CASE("differentiate") {
  CHECK(px().pow(3).differentiated(X) == Poly::parse("3*z1^2"));
  // hand-differentiated d/dsigma of the counterexample polynomial
  CHECK(sample_f().differentiated(S) == Poly::parse("6*z2 - 42*z1*s2_1 - 7*z2^3"));
  CHECK(Poly(5).differentiated(Y) == Poly());
}

TEST_CASE("substitute") {
  const Poly lam = Poly::variable(VarId::lambda());
  std::map<VarId, Poly> dilation{{X, lam * px()},
                                 {Y, lam * py()},
                                 {S, lam * lam * Poly::variable(S)}};
  CHECK(px().pow(2).substituted(dilation) == lam * lam * px() * px());
  CHECK(Poly::variable(S).substituted(dilation) == lam * lam * Poly::variable(S));

  std::map<VarId, Poly> identity{{X, px()}, {Y, py()}, {S, Poly::variable(S)}};
  CHECK(sample_f().substituted(identity) == sample_f());

  CHECK_THROWS_AS(sample_f().substituted({{X, px()}}), MissingComponent);
}

TEST_CASE("evaluate") {
  CHECK((px() + py()).evaluated({{X, Rational(1, 2)}, {Y, Rational(1, 3)}}) ==
        Rational(5, 6));
  CHECK_THROWS_AS(px().evaluated({{Y, Rational(1)}}), MissingCoordinate);
}

TEST_CASE("graded components") {
  const auto comps = sample_f().graded_components(Grading::weighted);
  REQUIRE(comps.size() == 3);
  CHECK(comps.count(1) == 1);
  CHECK(comps.count(3) == 1);
  CHECK(comps.count(5) == 1);
  CHECK(comps.at(1) == px());

  const auto simple = (px() + Poly::variable(S)).graded_components(Grading::weighted);
  REQUIRE(simple.size() == 2);
  CHECK(simple.at(1) == px());
  CHECK(simple.at(2) == Poly::variable(S));

  CHECK(Poly().graded_components(Grading::weighted).empty());
}

TEST_CASE("graded components recombine and are homogeneous") {
  const Poly lam = Poly::variable(VarId::lambda());
  std::map<VarId, Poly> dilation;
  for (const VarId v : {X, Y, S})
    dilation[v] = Poly::variable(v) * lam.pow(v.weight());
  for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const Poly p = random_poly(seed, {2, 1}, 5);
    const auto comps = p.graded_components(Grading::weighted);
    Poly sum;
    for (const auto& [d, c] : comps) {
      sum += c;
      CHECK(c.substituted(dilation) == c * lam.pow(d));
    }
    CHECK(sum == p);
  }
}

TEST_CASE("ring axioms on random polynomials") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    const Poly a = random_poly(3 * seed, {2, 1}, 4);
    const Poly b = random_poly(3 * seed + 1, {2, 1}, 4);
    const Poly c = random_poly(3 * seed + 2, {2, 1}, 4);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == Poly());
  }
}

TEST_CASE("mixed partials commute") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const Poly p = random_poly(seed, {2, 1}, 6);
    for (const VarId u : {X, Y, S})
      for (const VarId v : {X, Y, S})
        CHECK(p.differentiated(u).differentiated(v) ==
              p.differentiated(v).differentiated(u));
  }
}

TEST_CASE("evaluate commutes with substitute") {
  const Point pt{{X, Rational(1, 2)}, {Y, Rational(-2, 3)}, {S, Rational(3, 5)}};
  std::map<VarId, Poly> images{{X, px() * py() + Poly(1)},
                               {Y, Poly::variable(S) - px()},
                               {S, py().pow(2)}};
  Point image_pt;
  for (const auto& [v, p] : images) image_pt[v] = p.evaluated(pt);
  for (uint64_t seed = 10; seed < 15; ++seed) {
    const Poly p = random_poly(seed, {2, 1}, 4);
    CHECK(p.substituted(images).evaluated(pt) == p.evaluated(image_pt));
  }
}

TEST_CASE("random_poly determinism and fixtures") {
  CHECK(random_poly(42, {2, 1}, 3) == random_poly(42, {2, 1}, 3));
  // frozen after one generator run
  CHECK(random_poly(42, {2, 1}, 3).str() == "4*z2");
  CHECK(random_poly(43, {2, 1}, 3).str() ==
        "5*z2 - 2*z1^2 + 4*z1*z2 - 5*z2^2 + 4*s2_1 - 3*z1^3 - 5*z1^2*z2 + 4*z1*s2_1");
  CHECK(random_poly(1, {2, 1, 1}, 4).str() ==
        "4*z2 + 4*z1^2 - 9*z1*z2 + 6*z2^2 - 5*s2_1 - 8*z2^3 - 4*s3_1 - 6*z1^4 "
        "- 3*z1^2*z2^2 + 2*z2^2*s2_1 - 3*s2_1^2");
  CHECK_FALSE(random_poly(42, {2, 1}, 3) == random_poly(43, {2, 1}, 3));
  CHECK(random_poly(42, {2, 1}, 0).is_constant());
}

TEST_CASE("canonical text form") {
  const Poly p = Poly::parse("1 - 3*z1^2 - 21*s2_1^2");
  CHECK(p.str() == "1 - 3*z1^2 - 21*s2_1^2");
  CHECK(Poly().str() == "0");
  CHECK(Poly::parse("0") == Poly());
  CHECK(Poly::parse("z1 + z1") == Poly::parse("2*z1"));
  CHECK(Poly::parse("-z1^3 + 6*z2*s2_1").str() == "-z1^3 + 6*z2*s2_1");
  CHECK(Poly::parse("1/2*z1'").str() == "1/2*z1'");
  CHECK_THROWS_AS(Poly::parse("z1 + + z2"), ParseError);
  CHECK_THROWS_AS(Poly::parse("q3"), ParseError);
  CHECK_THROWS_AS(Poly::parse(""), ParseError);
}

TEST_CASE("serialization round trip on random polynomials") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Poly p = random_poly(seed, {3, 3}, 4);
    CHECK(Poly::parse(p.str()) == p);
  }
}
