#include "carnot/identities.hpp"

#include <json.hpp>

#include "carnot/errors.hpp"

namespace carnot {

std::string IdentityResidual::to_json_text() const {
  nlohmann::json j;
  j["identity"] = identity_name;
  j["group"] = group;
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  j["degree"] = degree ? nlohmann::json(*degree) : nlohmann::json(nullptr);
  j["residual_is_zero"] = residual.is_zero();
  j["residual_text_if_nonzero"] =
      residual.is_zero() ? nlohmann::json(nullptr) : nlohmann::json(residual.str());
  return j.dump(2) + "\n";
}

Poly horizontal_laplacian(const GroupLaw& g, const Poly& f) {
  Poly r;
  for (const DiffOp& x : horizontal_fields(g, Side::left)) r += x.apply(x.apply(f));
  return r;
}

Poly carre_du_champ(const GroupLaw& g, const Poly& f, Side side) {
  Poly r;
  for (const DiffOp& x : horizontal_fields(g, side)) {
    const Poly xf = x.apply(f);
    r += xf * xf;
  }
  return r;
}

IdentityResidual bochner_right_residual(const GroupLaw& g, const Poly& f,
                                        std::optional<long> seed,
                                        std::optional<int> degree) {
  const auto left = horizontal_fields(g, Side::left);
  const auto right = horizontal_fields(g, Side::right);

  const Poly lap_f = horizontal_laplacian(g, f);
  Poly lhs = horizontal_laplacian(g, carre_du_champ(g, f, Side::right));

  Poly cross;
  for (const DiffOp& xt : right) cross += xt.apply(f) * xt.apply(lap_f);

  Poly squares;
  for (const DiffOp& x : left) {
    const Poly xf = x.apply(f);
    for (const DiffOp& xt : right) {
      const Poly xtxf = xt.apply(xf);
      squares += xtxf * xtxf;
    }
  }

  Poly residual = lhs - cross.scaled(Rational(2)) - squares.scaled(Rational(2));
  return {"bochner_right", g.algebra.name(), seed, degree, std::move(residual)};
}

CheckReport bochner_right_nonneg(const GroupLaw& g, const Poly& f) {
  const Poly lap_f = horizontal_laplacian(g, f);
  if (!lap_f.is_constant())
    throw NotConstantLaplacian("bochner_right_nonneg: Delta_H f = " + lap_f.str() +
                               " is not constant");
  const auto left = horizontal_fields(g, Side::left);
  const auto right = horizontal_fields(g, Side::right);

  Poly squares;
  std::string witness = "sum of squares of:";
  for (const DiffOp& x : left) {
    const Poly xf = x.apply(f);
    for (const DiffOp& xt : right) {
      const Poly xtxf = xt.apply(xf);
      squares += xtxf * xtxf;
      witness += " [" + xtxf.str() + "]";
    }
  }
  const Poly lhs = horizontal_laplacian(g, carre_du_champ(g, f, Side::right));
  const Poly residual = lhs - squares.scaled(Rational(2));

  CheckReport report;
  report.add("laplacian_constant", true, lap_f.str());
  report.add("sum_of_squares_identity", residual.is_zero(),
             residual.is_zero() ? witness : "residual: " + residual.str());
  return report;
}

IdentityResidual step2_difference_residual(const GroupLaw& g, const Poly& f,
                                           std::optional<long> seed,
                                           std::optional<int> degree) {
  if (g.algebra.step() != 2)
    throw WrongStep("step2_difference_residual: group '" + g.algebra.name() +
                    "' has step " + std::to_string(g.algebra.step()) + ", need 2");
  const Poly left = carre_du_champ(g, f, Side::left);
  const Poly right = carre_du_champ(g, f, Side::right);

  // 2 sum_l ( sum_{i<j} b^l_ij (z_i dz_j f - z_j dz_i f) ) dsigma_l f.
  Poly correction;
  const int m = g.algebra.horizontal_dim();
  for (int l = 1; l <= g.algebra.layer_dim(2); ++l) {
    Poly rotational;
    for (int i = 1; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j)
        for (const auto& t : g.algebra.basis_bracket(VarId::z(i), VarId::z(j))) {
          if (t.target.index != l) continue;
          const Poly angular = Poly::variable(VarId::z(i)) * f.differentiated(VarId::z(j)) -
                               Poly::variable(VarId::z(j)) * f.differentiated(VarId::z(i));
          rotational += angular.scaled(t.coeff);
        }
    correction += rotational * f.differentiated(VarId::s(2, l));
  }

  Poly residual = left - right - correction.scaled(Rational(2));
  return {"step2_difference", g.algebra.name(), seed, degree, std::move(residual)};
}

IdentityResidual euclidean_bochner_residual(const GroupLaw& g, const Poly& f,
                                            std::optional<long> seed,
                                            std::optional<int> degree) {
  if (g.algebra.step() != 1)
    throw NotAbelian("euclidean_bochner_residual: group '" + g.algebra.name() +
                     "' has step " + std::to_string(g.algebra.step()) + ", need 1");
  const std::vector<VarId> vars = g.algebra.basis();

  Poly grad_sq, lap;
  for (const VarId v : vars) {
    const Poly dv = f.differentiated(v);
    grad_sq += dv * dv;
    lap += dv.differentiated(v);
  }
  Poly lhs;
  for (const VarId v : vars) lhs += grad_sq.differentiated(v).differentiated(v);

  // Hessian squared counts all ordered pairs (Hilbert-Schmidt norm).
  Poly hess_sq;
  for (const VarId u : vars)
    for (const VarId v : vars) {
      const Poly duv = f.differentiated(u).differentiated(v);
      hess_sq += duv * duv;
    }
  Poly cross;
  for (const VarId v : vars) cross += f.differentiated(v) * lap.differentiated(v);

  Poly residual = lhs - hess_sq.scaled(Rational(2)) - cross.scaled(Rational(2));
  return {"euclidean_bochner", g.algebra.name(), seed, degree, std::move(residual)};
}

Poly radial_reconstruct(const GroupLaw& g, const Poly& f) {
  // f = f(e) + sum_d (1/d) (Zf)_d, the polynomial form of integrating
  // lambda^{-1} Zf(delta_lambda p) from 0 to 1.
  const DiffOp z = generator_field(g);
  const Poly zf = z.apply(f);
  Poly out(f.constant_term());
  for (const auto& [d, comp] : zf.graded_components(Grading::weighted)) {
    if (d == 0) continue;  // Zf has no constant part for polynomial f
    out += comp.scaled(Rational(1, d));
  }
  return out;
}

}  // namespace carnot
