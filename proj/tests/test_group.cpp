#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/errors.hpp"
#include "carnot/group.hpp"
#include "carnot/rng.hpp"

using namespace carnot;

namespace {

GroupLaw law_of(const std::string& spec) {
  return derive_group_law(StratifiedLieAlgebra::builtin(spec));
}

// Images realizing p -> (first o second) with the factors drawn from the
// given variable copies.
std::map<VarId, Poly> translation_images(const GroupLaw& g, int first_copy,
                                         int second_copy) {
  std::map<VarId, Poly> rename;
  for (const VarId v : g.algebra.basis()) {
    rename[v] = Poly::variable(v.with_copy(first_copy));
    rename[v.with_copy(1)] = Poly::variable(v.with_copy(second_copy));
  }
  std::map<VarId, Poly> images;
  int i = 0;
  for (const VarId v : g.algebra.basis())
    images[v] = g.law.components[static_cast<size_t>(i++)].substituted(rename);
  return images;
}

std::map<VarId, Poly> dilation_images(const GroupLaw& g) {
  const Poly lam = Poly::variable(VarId::lambda());
  std::map<VarId, Poly> images;
  for (const VarId v : g.algebra.basis())
    images[v] = Poly::variable(v) * lam.pow(v.weight());
  return images;
}

}  // namespace

TEST_CASE("heisenberg group law") {
  const GroupLaw g = law_of("heisenberg:1");
  REQUIRE(g.law.components.size() == 3);
  CHECK(g.law.input_arity == 6);
  CHECK(g.component(VarId::z(1)) == Poly::parse("z1 + z1'"));
  CHECK(g.component(VarId::z(2)) == Poly::parse("z2 + z2'"));
  CHECK(g.component(VarId::s(2, 1)) ==
        Poly::parse("s2_1 + s2_1' + 1/2*z1*z2' - 1/2*z2*z1'"));
}

TEST_CASE("abelian group law is componentwise addition") {
  const GroupLaw g = law_of("abelian:3");
  for (const VarId v : g.algebra.basis())
    CHECK(g.component(v) == Poly::variable(v) + Poly::variable(v.with_copy(1)));
}

TEST_CASE("group law axioms on all builtins") {
  for (const char* spec : {"heisenberg:1", "heisenberg:2", "abelian:3", "engel", "free2:3"}) {
    const GroupLaw g = law_of(spec);
    std::map<VarId, Poly> at_identity, swap_identity, inverse, dilated;
    const Poly lam = Poly::variable(VarId::lambda());
    for (const VarId v : g.algebra.basis()) {
      at_identity[v] = Poly::variable(v);
      at_identity[v.with_copy(1)] = Poly();
      swap_identity[v] = Poly();
      swap_identity[v.with_copy(1)] = Poly::variable(v);
      inverse[v] = Poly::variable(v);
      inverse[v.with_copy(1)] = -Poly::variable(v);
      dilated[v] = Poly::variable(v) * lam.pow(v.weight());
      dilated[v.with_copy(1)] = Poly::variable(v.with_copy(1)) * lam.pow(v.weight());
    }
    int i = 0;
    for (const VarId v : g.algebra.basis()) {
      const Poly& comp = g.law.components[static_cast<size_t>(i++)];
      CHECK(comp.substituted(at_identity) == Poly::variable(v));
      CHECK(comp.substituted(swap_identity) == Poly::variable(v));
      CHECK(comp.substituted(inverse) == Poly());
      CHECK(comp.substituted(dilated) == comp * lam.pow(v.weight()));
    }

    // associativity: law(law(x,y),z) = law(x,law(y,z)) in formal variables
    const auto left_first = translation_images(g, 0, 1);
    const auto right_inner = translation_images(g, 1, 2);
    std::map<VarId, Poly> outer_left, outer_right;
    for (const VarId v : g.algebra.basis()) {
      outer_left[v] = left_first.at(v);
      outer_left[v.with_copy(1)] = Poly::variable(v.with_copy(2));
      outer_right[v] = Poly::variable(v);
      outer_right[v.with_copy(1)] = right_inner.at(v);
    }
    for (const Poly& comp : g.law.components)
      CHECK(comp.substituted(outer_left) == comp.substituted(outer_right));
  }
}

TEST_CASE("associativity spot check on rational points for free2:3") {
  const GroupLaw g = law_of("free2:3");
  SplitMix64 rng(2024);
  auto rand_point = [&]() {
    Point p;
    for (const VarId v : g.algebra.basis())
      p[v] = Rational(static_cast<long>(rng.next() % 41) - 20,
                      static_cast<long>(rng.next() % 7) + 1);
    return p;
  };
  auto mul = [&](const Point& a, const Point& b) {
    Point joined;
    for (const auto& [v, c] : a) joined[v] = c;
    for (const auto& [v, c] : b) joined[v.with_copy(1)] = c;
    Point out;
    int i = 0;
    for (const VarId v : g.algebra.basis())
      out[v] = g.law.components[static_cast<size_t>(i++)].evaluated(joined);
    return out;
  };
  for (int trial = 0; trial < 10; ++trial) {
    const Point x = rand_point(), y = rand_point(), z = rand_point();
    CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
  }
}

TEST_CASE("heisenberg invariant fields match the classical formulas") {
  const GroupLaw g = law_of("heisenberg:1");
  const auto left = invariant_fields(g, Side::left);
  REQUIRE(left.size() == 3);
  CHECK(left[0].str() == "d[z1] - 1/2*z2*d[s2_1]");
  CHECK(left[1].str() == "d[z2] + 1/2*z1*d[s2_1]");
  CHECK(left[2].str() == "d[s2_1]");

  const auto right = invariant_fields(g, Side::right);
  CHECK(right[0].str() == "d[z1] + 1/2*z2*d[s2_1]");
  CHECK(right[1].str() == "d[z2] - 1/2*z1*d[s2_1]");
  CHECK(right[2].str() == "d[s2_1]");
}

TEST_CASE("abelian fields are coordinate partials") {
  const GroupLaw g = law_of("abelian:3");
  const auto left = invariant_fields(g, Side::left);
  const auto right = invariant_fields(g, Side::right);
  int i = 0;
  for (const VarId v : g.algebra.basis()) {
    CHECK(left[static_cast<size_t>(i)] == DiffOp::partial(v));
    CHECK(right[static_cast<size_t>(i)] == DiffOp::partial(v));
    ++i;
  }
}

TEST_CASE("apply and compose on the counterexample polynomial") {
  const GroupLaw g = law_of("heisenberg:1");
  const auto fields = horizontal_fields(g, Side::left);
  const Poly f = Poly::parse(
      "z1 + 6*z2*s2_1 - z1^3 - 21*z1*s2_1^2 + 21/8*z1*z2^4 - 7*z2^3*s2_1 + 21/40*z1^5");

  CHECK(fields[0].apply(f) ==
        Poly::parse("1 - 3*z1^2 - 3*z2^2 - 21*s2_1^2 + 21/8*z1^4 + 49/8*z2^4 "
                    "+ 21*z1*z2*s2_1"));
  CHECK(fields[1].apply(f) ==
        Poly::parse("6*s2_1 + 3*z1*z2 - 21*s2_1*z1^2 - 21*s2_1*z2^2 + 7*z1*z2^3"));

  const DiffOp x1x1 = fields[0].compose(fields[0]);
  CHECK(x1x1.apply(f) == Poly::parse("-6*z1 + 21/2*z1^3 + 42*z2*s2_1 - 21/2*z1*z2^2"));
  CHECK(fields[0].apply(fields[0].apply(f)) == x1x1.apply(f));

  CHECK(fields[0].apply(Poly(7)) == Poly());
}

TEST_CASE("commutators") {
  const GroupLaw g = law_of("heisenberg:1");
  const auto left = horizontal_fields(g, Side::left);
  CHECK(commutator(left[0], left[1]) == DiffOp::partial(VarId::s(2, 1)));

  for (const char* spec : {"heisenberg:1", "heisenberg:2", "abelian:3", "engel", "free2:3"}) {
    const GroupLaw gl = law_of(spec);
    const auto l = invariant_fields(gl, Side::left);
    const auto r = invariant_fields(gl, Side::right);
    for (const auto& x : l)
      for (const auto& xt : r) CHECK(commutator(x, xt).is_zero());
  }
}

TEST_CASE("left brackets at the identity reproduce the structure constants") {
  for (const char* spec : {"heisenberg:2", "engel", "free2:3"}) {
    const GroupLaw g = law_of(spec);
    const auto fields = invariant_fields(g, Side::left);
    const auto basis = g.algebra.basis();
    Point origin;
    for (const VarId v : basis) origin[v] = Rational(0);
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = i + 1; j < basis.size(); ++j) {
        const DiffOp c = commutator(fields[i], fields[j]);
        std::map<VarId, Rational> got;
        for (const VarId w : basis) {
          const Rational v = c.coefficient(Monomial(w)).evaluated(origin);
          if (!v.is_zero()) got[w] = v;
        }
        std::map<VarId, Rational> want;
        for (const auto& t : g.algebra.basis_bracket(basis[i], basis[j]))
          want[t.target] = t.coeff;
        CHECK(got == want);
      }
  }
}

TEST_CASE("invariance holds symbolically") {
  for (const char* spec : {"heisenberg:1", "engel"}) {
    const GroupLaw g = law_of(spec);
    const Poly f = random_poly(5, g.algebra.layer_dims(), 4);
    // left translation by a formal point in copy-2 variables
    const auto left_translate = translation_images(g, 2, 0);
    for (const auto& x : horizontal_fields(g, Side::left)) {
      CHECK(x.apply(f.substituted(left_translate)) ==
            x.apply(f).substituted(left_translate));
    }
    const auto right_translate = translation_images(g, 0, 2);
    for (const auto& xt : horizontal_fields(g, Side::right)) {
      CHECK(xt.apply(f.substituted(right_translate)) ==
            xt.apply(f).substituted(right_translate));
    }
  }
}

TEST_CASE("compose is associative and commutator satisfies Jacobi") {
  const GroupLaw g = law_of("engel");
  const auto fields = invariant_fields(g, Side::left);
  const DiffOp& a = fields[0];
  const DiffOp& b = fields[1];
  const DiffOp& c = fields[2];
  CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
  const DiffOp jac = commutator(commutator(a, b), c) + commutator(commutator(b, c), a) +
                     commutator(commutator(c, a), b);
  CHECK(jac.is_zero());
  CHECK(commutator(a, b).order() == 1);
  CHECK(a.compose(a).order() == 2);
}

TEST_CASE("generator field") {
  const GroupLaw g = law_of("heisenberg:1");
  const DiffOp z = generator_field(g);
  CHECK(z.str() == "z1*d[z1] + z2*d[z2] + 2*s2_1*d[s2_1]");

  const GroupLaw ab = law_of("abelian:3");
  DiffOp expected;
  for (const VarId v : ab.algebra.basis())
    expected += DiffOp::partial(v).scaled(Poly::variable(v));
  CHECK(generator_field(ab) == expected);

  // Euler identity per weighted-homogeneous component
  const Poly p = random_poly(11, {2, 1}, 5);
  for (const auto& [d, comp] : p.graded_components(Grading::weighted))
    CHECK(z.apply(comp) == comp.scaled(Rational(d)));
}

TEST_CASE("z decomposition") {
  const GroupLaw g = law_of("heisenberg:1");
  const auto dec = z_decompose(g);
  REQUIRE(dec.q.size() == 3);
  CHECK(dec.q[0].first == VarId::z(1));
  CHECK(dec.q[0].second == Poly::parse("z1"));
  CHECK(dec.q[1].second == Poly::parse("z2"));
  CHECK(dec.q[2].second == Poly::parse("2*s2_1"));

  for (const char* spec : {"heisenberg:1", "heisenberg:2", "abelian:3", "engel", "free2:3"}) {
    const GroupLaw gl = law_of(spec);
    const auto d = z_decompose(gl);
    DiffOp recombined;
    for (size_t i = 0; i < d.q.size(); ++i)
      recombined += d.frame[i].second.scaled(d.q[i].second);
    CHECK(recombined == generator_field(gl));
    const Poly lam = Poly::variable(VarId::lambda());
    const auto dil = dilation_images(gl);
    for (const auto& [v, q] : d.q) {
      if (v.layer == 1) CHECK(q == Poly::variable(v));
      if (!q.is_zero()) CHECK(q.substituted(dil) == q * lam.pow(v.weight()));
    }
  }
}

TEST_CASE("bracket generating step") {
  auto step_of = [](const char* spec) {
    const GroupLaw g = derive_group_law(StratifiedLieAlgebra::builtin(spec));
    return bracket_generating_step(horizontal_fields(g, Side::left), g);
  };
  CHECK(step_of("heisenberg:1") == 2);
  CHECK(step_of("abelian:4") == 1);
  CHECK(step_of("engel") == 3);
  CHECK(step_of("free2:3") == 2);

  // a frame that cannot generate: layers (2,1) with an abelian law
  StratifiedLieAlgebra fake({2, 1}, "fake");
  PolyMap law;
  law.input_arity = 6;
  for (const VarId v : fake.basis())
    law.components.push_back(Poly::variable(v) + Poly::variable(v.with_copy(1)));
  const GroupLaw bad{fake, law};
  CHECK_THROWS_AS(bracket_generating_step(horizontal_fields(bad, Side::left), bad),
                  NotGenerating);
}

TEST_CASE("gauge membership") {
  const Rational r(1, 2);
  CHECK(gauge_inside({}, r));  // the identity
  Point p;
  p[VarId::z(1)] = Rational(0);
  p[VarId::z(2)] = Rational(0);
  p[VarId::s(2, 1)] = r * r;  // exactly on the boundary: excluded
  CHECK_FALSE(gauge_inside(p, r));
  p[VarId::s(2, 1)] = Rational(1, 5);  // 1/5 < 1/4
  CHECK(gauge_inside(p, r));

  const GaugeValue gv = gauge_of(p);
  REQUIRE(gv.layer_magnitudes.size() == 2);
  CHECK(gv.layer_magnitudes[0] == Rational(0));
  CHECK(gv.layer_magnitudes[1] == Rational(1, 5));
  CHECK(gv.inside(r));
  CHECK_FALSE(gv.inside(Rational(1, 3)));  // 1/5 > 1/9

  CHECK_THROWS_AS(gauge_inside(p, Rational(0)), NonpositiveRadius);
  CHECK_THROWS_AS(gauge_inside(p, Rational(-1)), NonpositiveRadius);

  // starlike: p inside implies delta_{1/2} p inside
  SplitMix64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    Point q;
    q[VarId::z(1)] = Rational(static_cast<long>(rng.next() % 9) - 4, 9);
    q[VarId::z(2)] = Rational(static_cast<long>(rng.next() % 9) - 4, 9);
    q[VarId::s(2, 1)] = Rational(static_cast<long>(rng.next() % 9) - 4, 17);
    if (!gauge_inside(q, Rational(2, 3))) continue;
    Point half;
    for (const auto& [v, c] : q) half[v] = c * Rational(1, 2).pow(v.weight());
    CHECK(gauge_inside(half, Rational(2, 3)));
  }
}

TEST_CASE("operator serialization round trip") {
  const GroupLaw g = law_of("engel");
  for (const auto& op : invariant_fields(g, Side::left))
    CHECK(DiffOp::parse(op.str()) == op);
  for (const auto& op : invariant_fields(g, Side::right))
    CHECK(DiffOp::parse(op.str()) == op);
  const auto fields = horizontal_fields(g, Side::left);
  const DiffOp second_order = fields[0].compose(fields[1]);
  CHECK(DiffOp::parse(second_order.str()) == second_order);
  CHECK(DiffOp::parse("0") == DiffOp());
  CHECK(DiffOp().str() == "0");
}
