#include "carnot/maxmod.hpp"

#include <json.hpp>

#include <algorithm>

#include "carnot/errors.hpp"
#include "carnot/matrix.hpp"
#include "carnot/rng.hpp"

namespace carnot {

namespace {

std::vector<Monomial> monomials_of_weighted_degree(const std::vector<int>& layer_dims,
                                                   int d) {
  std::vector<Monomial> out;
  for (const Monomial& m : enumerate_monomials(layer_dims, d))
    if (m.weighted_degree() == d) out.push_back(m);
  return out;
}

GroupLaw heisenberg1() { return derive_group_law(StratifiedLieAlgebra::builtin("heisenberg:1")); }

Point h1_point(const Rational& x, const Rational& y, const Rational& s) {
  return Point{{VarId::z(1), x}, {VarId::z(2), y}, {VarId::s(2, 1), s}};
}

}  // namespace

HarmonicBasis harmonic_basis(const GroupLaw& g, int d) {
  if (d < 0) throw Error("harmonic_basis: negative degree");
  const std::vector<Monomial> domain =
      monomials_of_weighted_degree(g.algebra.layer_dims(), d);
  const std::vector<Monomial> image =
      d >= 2 ? monomials_of_weighted_degree(g.algebra.layer_dims(), d - 2)
             : std::vector<Monomial>{};

  RatMatrix m(static_cast<int>(image.size()), static_cast<int>(domain.size()));
  for (size_t c = 0; c < domain.size(); ++c) {
    const Poly lap = horizontal_laplacian(g, Poly::monomial(domain[c], Rational(1)));
    for (const auto& [mono, coeff] : lap.terms()) {
      const auto it = std::lower_bound(image.begin(), image.end(), mono);
      if (it == image.end() || !(*it == mono))
        throw Error("harmonic_basis: Delta_H output outside expected degree");
      m.at(static_cast<int>(it - image.begin()), static_cast<int>(c)) = coeff;
    }
  }

  HarmonicBasis out;
  out.group = g.algebra.name();
  out.weighted_degree = d;
  std::vector<int> free_cols;
  const auto vectors = m.nullspace(&free_cols);
  for (size_t i = 0; i < vectors.size(); ++i) {
    Poly p;
    for (size_t c = 0; c < domain.size(); ++c)
      if (!vectors[i][c].is_zero()) p.add_term(domain[c], vectors[i][c]);
    out.basis.push_back(std::move(p));
    out.pivots.push_back(domain[static_cast<size_t>(free_cols[i])]);
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

Poly reduce_against(const HarmonicBasis& basis, Poly p) {
  for (size_t i = 0; i < basis.basis.size(); ++i) {
    const Rational c = p.coefficient(basis.pivots[i]);
    if (!c.is_zero()) p -= basis.basis[i].scaled(c);
  }
  return p;
}

Poly solid_harmonic_1() { return Poly::parse("z1"); }

Poly solid_harmonic_3() { return Poly::parse("6*z2*s2_1 - z1^3"); }

Poly solid_harmonic_5() {
  return Poly::parse("z1*s2_1^2 - 1/8*z1*z2^4 + 1/3*z2^3*s2_1 - 1/40*z1^5");
}

Poly counterexample_f() {
  return solid_harmonic_1() + solid_harmonic_3() - solid_harmonic_5().scaled(Rational(21));
}

namespace {

// Reference polynomials for the counterexample derivative chain.
Poly reference_x1f() {
  return Poly::parse(
      "1 - 3*z1^2 - 3*z2^2 - 21*s2_1^2 + 21/8*z1^4 + 49/8*z2^4 + 21*z1*z2*s2_1");
}
Poly reference_x2f() {
  return Poly::parse("6*s2_1 + 3*z1*z2 - 21*s2_1*z1^2 - 21*s2_1*z2^2 + 7*z1*z2^3");
}
Poly reference_x1x1f() {
  return Poly::parse("-6*z1 + 21/2*z1^3 + 42*z2*s2_1 - 21/2*z1*z2^2");
}
Poly reference_x2x2f() {
  return Poly::parse("6*z1 - 21/2*z1^3 - 42*z2*s2_1 + 21/2*z1*z2^2");
}
Poly reference_g() { return Poly::parse("21/8*z1^4 + 49/8*z2^4 + 21*z1*z2*s2_1"); }
Poly reference_h() {
  return Poly::parse("3*z1*z2 - 21*s2_1*z1^2 - 21*s2_1*z2^2 + 7*z1*z2^3");
}

Poly reference_k() {
  const Poly g = reference_g();
  const Poly h = reference_h();
  const Poly sigma = Poly::variable(VarId::s(2, 1));
  const Poly zsq = Poly::parse("z1^2 + z2^2");
  return g.scaled(Rational(2)) + g * g + h * h + (sigma * h).scaled(Rational(12)) -
         (zsq * g).scaled(Rational(6)) - (sigma * sigma * g).scaled(Rational(42)) +
         (zsq * sigma * sigma).scaled(Rational(126)) + (zsq * zsq).scaled(Rational(9)) +
         (sigma.pow(4)).scaled(Rational(441));
}

std::optional<std::string> residual_witness(const Poly& got, const Poly& want) {
  if (got == want) return std::nullopt;
  return "residual: " + (got - want).str();
}

}  // namespace

CheckReport verify_counterexample() { return verify_counterexample(counterexample_f()); }

CheckReport verify_counterexample(const Poly& f) {
  const GroupLaw g = heisenberg1();
  const auto fields = horizontal_fields(g, Side::left);
  const Poly x1f = fields[0].apply(f);
  const Poly x2f = fields[1].apply(f);

  CheckReport report;
  {
    auto w1 = residual_witness(x1f, reference_x1f());
    auto w2 = residual_witness(x2f, reference_x2f());
    report.add("first_derivatives_match", !w1 && !w2,
               w1 ? w1 : w2);
  }
  {
    auto w1 = residual_witness(fields[0].apply(x1f), reference_x1x1f());
    auto w2 = residual_witness(fields[1].apply(x2f), reference_x2x2f());
    report.add("second_derivatives_match", !w1 && !w2, w1 ? w1 : w2);
  }

  const Poly carre = carre_du_champ(g, f, Side::left);
  {
    const Rational at_origin = carre.evaluated(h1_point(0, 0, 0));
    report.add("carre_at_origin_is_one", at_origin == Rational(1),
               at_origin == Rational(1) ? std::optional<std::string>{}
                                        : std::optional<std::string>(at_origin.str()));
  }

  const Poly k = reference_k();
  {
    const Poly expected = Poly(1) - Poly::parse("6*z1^2 + 6*z2^2 + 6*s2_1^2") + k;
    report.add("carre_decomposition_exact", carre == expected,
               residual_witness(carre, expected));
  }
  {
    const bool ok = reference_g().min_degree(Grading::euclidean) >= 3 &&
                    reference_h().min_degree(Grading::euclidean) >= 2;
    report.add("g_h_vanishing_orders", ok,
               ok ? std::optional<std::string>{}
                  : std::optional<std::string>(
                        "g min degree " +
                        std::to_string(reference_g().min_degree(Grading::euclidean)) +
                        ", h min degree " +
                        std::to_string(reference_h().min_degree(Grading::euclidean))));
  }
  {
    const int md = k.min_degree(Grading::euclidean);
    report.add("k_euclidean_order_at_least_3", md >= 3,
               md >= 3 ? std::optional<std::string>{}
                       : std::optional<std::string>("min euclidean degree " +
                                                    std::to_string(md)));
  }
  {
    const int md = k.min_degree(Grading::weighted);
    report.add("k_weighted_degree_at_least_4", md >= 4,
               md >= 4 ? std::optional<std::string>{}
                       : std::optional<std::string>("min weighted degree " +
                                                    std::to_string(md)));
  }
  {
    const Poly lap_carre = horizontal_laplacian(g, carre);
    const Poly expected =
        Poly::parse("-24 - 3*z1^2 - 3*z2^2") + horizontal_laplacian(g, k);
    bool ok = lap_carre == expected;
    std::optional<std::string> witness = residual_witness(lap_carre, expected);
    if (ok) {
      const auto comps = lap_carre.graded_components(Grading::weighted);
      const auto c0 = comps.find(0);
      if (c0 == comps.end() || !(c0->second == Poly(-24))) {
        ok = false;
        witness = "constant part is not -24";
      } else if (comps.count(1)) {
        ok = false;
        witness = "unexpected weighted-degree-1 part: " + comps.at(1).str();
      }
    }
    report.add("laplacian_of_carre_decomposition", ok, witness);
  }
  return report;
}

std::string RadiusCertificate::to_json_text() const {
  nlohmann::json j;
  j["radius"] = radius.str();
  j["bound_constant"] = bound_constant.str();
  j["grid_samples"] = nlohmann::json::array();
  for (const auto& [pt, value] : grid_samples) {
    nlohmann::json s;
    for (const auto& [v, c] : pt) s["point"][v.str()] = c.str();
    s["value"] = value.str();
    j["grid_samples"].push_back(s);
  }
  return j.dump(2) + "\n";
}

namespace {

// Coefficient-norm bound sum |c_a| r^(edeg(a)-2) over the monomials of the
// excess polynomial; < 6 forces the carre du champ below 1 on the punctured
// euclidean ball of radius r.
Rational coefficient_bound(const Poly& excess, const Rational& r) {
  Rational b(0);
  for (const auto& [m, c] : excess.terms())
    b += c.abs() * r.pow(m.euclidean_degree() - 2);
  return b;
}

}  // namespace

RadiusCertificate strict_max_radius(const Poly& f) {
  const GroupLaw g = heisenberg1();
  const Poly carre = carre_du_champ(g, f, Side::left);
  const Poly excess = carre - Poly(1) + Poly::parse("6*z1^2 + 6*z2^2 + 6*s2_1^2");
  if (!excess.is_zero() && excess.min_degree(Grading::euclidean) < 3)
    throw StructureMismatch(
        "strict_max_radius: excess has a monomial of euclidean degree < 3");

  Rational rho(1);
  while (!(coefficient_bound(excess, rho) < Rational(6))) rho *= Rational(1, 2);

  RadiusCertificate cert;
  cert.radius = rho;
  cert.bound_constant = coefficient_bound(excess, rho);

  const Rational step = rho * Rational(1, 4);
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j)
      for (int l = -3; l <= 3; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        if (i * i + j * j + l * l >= 16) continue;
        const Point pt = h1_point(step * Rational(i), step * Rational(j),
                                  step * Rational(l));
        const Rational value = carre.evaluated(pt);
        if (!(value < Rational(1)))
          throw Error("strict_max_radius: grid sample not below 1 at (" +
                      pt.at(VarId::z(1)).str() + "," + pt.at(VarId::z(2)).str() + "," +
                      pt.at(VarId::s(2, 1)).str() + ")");
        cert.grid_samples.push_back({pt, value});
      }
  return cert;
}

bool revalidate(const RadiusCertificate& cert, const Poly& f) {
  const GroupLaw g = heisenberg1();
  const Poly carre = carre_du_champ(g, f, Side::left);
  const Poly excess = carre - Poly(1) + Poly::parse("6*z1^2 + 6*z2^2 + 6*s2_1^2");
  if (cert.radius.sign() <= 0) return false;
  if (!excess.is_zero() && excess.min_degree(Grading::euclidean) < 3) return false;
  if (!(coefficient_bound(excess, cert.radius) < Rational(6))) return false;
  if (!(coefficient_bound(excess, cert.radius) == cert.bound_constant)) return false;
  for (const auto& [pt, value] : cert.grid_samples) {
    if (!(carre.evaluated(pt) == value)) return false;
    if (!(value < Rational(1))) return false;
  }
  return true;
}

std::optional<Point> find_excess_point(const Poly& value, const Rational& r,
                                       const Rational& threshold, int max_level) {
  if (r.sign() <= 0) throw NonpositiveRadius("find_excess_point: radius must be positive");
  // A constant never exceeds a threshold it does not already exceed.
  if (value.is_constant()) {
    if (value.constant_term() > threshold) return h1_point(0, 0, 0);
    return std::nullopt;
  }
  for (int level = 1; level <= max_level; ++level) {
    const Rational h = r * Rational(1, 1L << level);
    const long extent = (1L << level) - 1;
    for (long a = -extent; a <= extent; ++a)
      for (long b = -extent; b <= extent; ++b)
        for (long c = -extent; c <= extent; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          if (a * a + b * b + c * c >= (1L << (2 * level))) continue;
          const Point pt = h1_point(h * Rational(a), h * Rational(b), h * Rational(c));
          if (value.evaluated(pt) > threshold) return pt;
        }
  }
  return std::nullopt;
}

Point right_excess_witness(const Poly& f, const Rational& r) {
  const GroupLaw g = heisenberg1();
  const Poly carre = carre_du_champ(g, f, Side::right);
  const auto pt = find_excess_point(carre, r, Rational(1));
  if (!pt)
    throw NoWitnessFound("right_excess_witness: no excess on the dyadic grid within " +
                         r.str() + " (grid may be too coarse)");
  return *pt;
}

CheckReport left_subharmonicity_failure(const GroupLaw& g, const Poly& f) {
  const Poly lap_f = horizontal_laplacian(g, f);
  if (!lap_f.is_constant())
    throw NotConstantLaplacian("left_subharmonicity_failure: Delta_H f = " +
                               lap_f.str() + " is not constant");
  const Poly lap_carre = horizontal_laplacian(g, carre_du_champ(g, f, Side::left));

  CheckReport report;
  if (lap_carre.is_zero()) {
    report.add("subharmonicity_failure", false, "degenerate: identically zero");
    return report;
  }
  const auto comps = lap_carre.graded_components(Grading::weighted);
  const Rational c0 = lap_carre.constant_term();
  if (c0.sign() > 0) {
    report.add("subharmonicity_failure", false,
               "no failure (flat case): constant term " + c0.str());
    return report;
  }
  report.add("constant_term_negative", c0.sign() < 0, c0.str());
  report.add("no_weighted_degree_1_term", comps.count(1) == 0,
             comps.count(1) ? std::optional<std::string>(comps.at(1).str())
                            : std::nullopt);
  return report;
}

}  // namespace carnot
