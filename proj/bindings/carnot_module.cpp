#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "carnot/errors.hpp"
#include "carnot/identities.hpp"
#include "carnot/maxmod.hpp"
#include "carnot/rng.hpp"

namespace py = pybind11;
using namespace carnot;

namespace {

VarId var_from_string(const std::string& name) {
  const Poly p = Poly::parse(name);
  const auto vars = p.variables();
  if (vars.size() != 1 || !(p == Poly::variable(*vars.begin())))
    throw ParseError("expected a single variable, got '" + name + "'");
  return *vars.begin();
}

Point point_from_dict(const std::map<std::string, std::string>& d) {
  Point pt;
  for (const auto& [k, v] : d) pt[var_from_string(k)] = Rational::parse(v);
  return pt;
}

py::list report_to_list(const CheckReport& report) {
  py::list out;
  for (const auto& e : report.entries) {
    py::dict d;
    d["name"] = e.name;
    d["pass"] = e.pass;
    d["witness"] = e.witness ? py::object(py::str(*e.witness)) : py::object(py::none());
    out.append(d);
  }
  return out;
}

Side side_from_string(const std::string& s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  throw Error("side must be 'left' or 'right'");
}

}  // namespace

PYBIND11_MODULE(_carnot, m) {
  m.doc() = "exact symbolic calculus for Carnot groups";

  py::register_exception<Error>(m, "CarnotError");

  py::class_<Poly>(m, "Poly")
      .def(py::init([](const std::string& text) { return Poly::parse(text); }))
      .def_static("parse", &Poly::parse)
      .def("__str__", &Poly::str)
      .def("__repr__", [](const Poly& p) { return "Poly('" + p.str() + "')"; })
      .def("__add__", [](const Poly& a, const Poly& b) { return a + b; })
      .def("__sub__", [](const Poly& a, const Poly& b) { return a - b; })
      .def("__mul__", [](const Poly& a, const Poly& b) { return a * b; })
      .def("__neg__", [](const Poly& a) { return -a; })
      .def("__eq__", [](const Poly& a, const Poly& b) { return a == b; })
      .def("__pow__", [](const Poly& a, int e) { return a.pow(e); })
      .def("is_zero", &Poly::is_zero)
      .def("diff", [](const Poly& p, const std::string& v) {
        return p.differentiated(var_from_string(v));
      })
      .def("evaluate",
           [](const Poly& p, const std::map<std::string, std::string>& point) {
             return p.evaluated(point_from_dict(point)).str();
           })
      .def("weighted_degree", [](const Poly& p) { return p.degree(Grading::weighted); })
      .def("euclidean_degree", [](const Poly& p) { return p.degree(Grading::euclidean); })
      .def("weighted_components", [](const Poly& p) {
        py::dict out;
        for (const auto& [d, c] : p.graded_components(Grading::weighted))
          out[py::int_(d)] = c;
        return out;
      });

  py::class_<GroupLaw>(m, "Group")
      .def_static("builtin",
                  [](const std::string& spec) {
                    return derive_group_law(StratifiedLieAlgebra::builtin(spec));
                  })
      .def_static("from_json",
                  [](const std::string& text) {
                    return derive_group_law(StratifiedLieAlgebra::from_json_text(text));
                  })
      .def_property_readonly("name",
                             [](const GroupLaw& g) { return g.algebra.name(); })
      .def_property_readonly("step", [](const GroupLaw& g) { return g.algebra.step(); })
      .def_property_readonly("dim", [](const GroupLaw& g) { return g.algebra.dim(); })
      .def_property_readonly("layers",
                             [](const GroupLaw& g) { return g.algebra.layer_dims(); })
      .def("validate",
           [](const GroupLaw& g) { return report_to_list(g.algebra.validate()); })
      .def("law",
           [](const GroupLaw& g) {
             std::vector<std::string> out;
             for (const auto& c : g.law.components) out.push_back(c.str());
             return out;
           })
      .def("fields",
           [](const GroupLaw& g, const std::string& side) {
             std::vector<std::string> out;
             for (const auto& op : invariant_fields(g, side_from_string(side)))
               out.push_back(op.str());
             return out;
           },
           py::arg("side") = "left")
      .def("generator", [](const GroupLaw& g) { return generator_field(g).str(); })
      .def("apply_field",
           [](const GroupLaw& g, int index, const std::string& side, const Poly& f) {
             const auto fields = invariant_fields(g, side_from_string(side));
             if (index < 1 || index > static_cast<int>(fields.size()))
               throw Error("field index out of range");
             return fields[static_cast<size_t>(index - 1)].apply(f);
           },
           py::arg("index"), py::arg("side"), py::arg("f"))
      .def("laplacian",
           [](const GroupLaw& g, const Poly& f) { return horizontal_laplacian(g, f); })
      .def("carre_du_champ",
           [](const GroupLaw& g, const Poly& f, const std::string& side) {
             return carre_du_champ(g, f, side_from_string(side));
           },
           py::arg("f"), py::arg("side") = "left")
      .def("bochner_right_residual",
           [](const GroupLaw& g, const Poly& f) {
             return bochner_right_residual(g, f).residual;
           })
      .def("step2_difference_residual",
           [](const GroupLaw& g, const Poly& f) {
             return step2_difference_residual(g, f).residual;
           })
      .def("euclidean_bochner_residual",
           [](const GroupLaw& g, const Poly& f) {
             return euclidean_bochner_residual(g, f).residual;
           })
      .def("radial_reconstruct",
           [](const GroupLaw& g, const Poly& f) { return radial_reconstruct(g, f); })
      .def("z_decomposition",
           [](const GroupLaw& g) {
             py::list out;
             for (const auto& [v, q] : z_decompose(g).q)
               out.append(py::make_tuple(v.str(), q));
             return out;
           })
      .def("harmonic_basis", [](const GroupLaw& g, int degree) {
        const auto hb = harmonic_basis(g, degree);
        py::dict out;
        out["degree"] = hb.weighted_degree;
        out["dimension"] = hb.dimension;
        out["basis"] = hb.basis;
        return out;
      });

  m.def("random_poly",
        [](uint64_t seed, const GroupLaw& g, int max_weighted_degree) {
          return random_poly(seed, g.algebra.layer_dims(), max_weighted_degree);
        },
        py::arg("seed"), py::arg("group"), py::arg("max_weighted_degree"));
  m.def("counterexample_f", &counterexample_f);
  m.def("verify_counterexample",
        []() { return report_to_list(verify_counterexample()); });
  m.def("strict_max_radius", []() {
    const auto cert = strict_max_radius(counterexample_f());
    py::dict out;
    out["radius"] = cert.radius.str();
    out["bound_constant"] = cert.bound_constant.str();
    out["grid_samples"] = static_cast<int>(cert.grid_samples.size());
    return out;
  });
  m.def("right_excess_witness", [](const std::string& r) {
    const Point w = right_excess_witness(counterexample_f(), Rational::parse(r));
    std::map<std::string, std::string> out;
    for (const auto& [v, c] : w) out[v.str()] = c.str();
    return out;
  });

  m.attr("__version__") = "0.1.0";
}
