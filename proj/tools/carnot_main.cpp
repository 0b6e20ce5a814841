#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "carnot/errors.hpp"
#include "carnot/identities.hpp"
#include "carnot/maxmod.hpp"
#include "carnot/report.hpp"
#include "carnot/rng.hpp"

namespace {

constexpr const char* kToolVersion = "carnot 0.1.0";

struct RunConfig {
  std::string builtin = "heisenberg:1";
  std::string group_file;
  long seed = 42;
  int trials = 20;
  int max_degree = 5;
  std::string output = "text";
  std::string out_path;
  bool right = false;   // fields
  int degree = 3;       // harmonic
  std::string r = "1/10";  // witness radius
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--builtin", cfg.builtin,
                  "built-in group: heisenberg:n | abelian:n | engel | free2:m");
  cmd->add_option("--group", cfg.group_file, "group definition JSON file");
  cmd->add_option("file", cfg.group_file, "group definition JSON file (positional)");
  cmd->add_option("--seed", cfg.seed, "base seed for randomized checks");
  cmd->add_option("--trials", cfg.trials, "number of random polynomials")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-degree", cfg.max_degree, "weighted degree bound")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--output", cfg.output, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", cfg.out_path, "write the output to a file");
}

carnot::StratifiedLieAlgebra load_group(const RunConfig& cfg) {
  if (!cfg.group_file.empty())
    return carnot::StratifiedLieAlgebra::load_file(cfg.group_file);
  return carnot::StratifiedLieAlgebra::builtin(cfg.builtin);
}

carnot::OutputFormat format_of(const RunConfig& cfg) {
  return cfg.output == "json" ? carnot::OutputFormat::json : carnot::OutputFormat::text;
}

void deliver(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw carnot::Error("cannot open output file '" + cfg.out_path + "'");
  out << text;
}

int deliver_report(const RunConfig& cfg, const std::string& command,
                   const std::string& group, const carnot::CheckReport& report) {
  carnot::ReportMeta meta;
  meta.tool_version = kToolVersion;
  meta.group = group;
  meta.command = command;
  meta.seed = cfg.seed;
  meta.has_meta = true;
  deliver(cfg, emit_report(report, format_of(cfg), meta));
  return report.all_pass() ? 0 : 1;
}

int deliver_artifact(const RunConfig& cfg, const std::string& command,
                     const std::string& group, const nlohmann::json& payload,
                     const std::string& text_form) {
  if (format_of(cfg) == carnot::OutputFormat::text) {
    deliver(cfg, text_form);
  } else {
    nlohmann::json j = payload;
    j["tool_version"] = kToolVersion;
    j["group"] = group;
    j["command"] = command;
    deliver(cfg, j.dump(2) + "\n");
  }
  return 0;
}

std::string field_name(carnot::VarId v, carnot::Side side) {
  const std::string base = side == carnot::Side::left ? "X" : "Xt";
  if (v.layer == 1) return base + std::to_string(v.index);
  return base + "[" + std::to_string(v.layer) + "," + std::to_string(v.index) + "]";
}

int run_validate(const RunConfig& cfg) {
  const auto algebra = load_group(cfg);
  return deliver_report(cfg, "validate", algebra.name(), algebra.validate());
}

int run_law(const RunConfig& cfg) {
  const auto g = carnot::derive_group_law(load_group(cfg));
  nlohmann::json payload;
  payload["components"] = nlohmann::json::array();
  std::string text;
  for (const auto& comp : g.law.components) {
    payload["components"].push_back(comp.str());
    text += comp.str() + "\n";
  }
  return deliver_artifact(cfg, "law", g.algebra.name(), payload, text);
}

int run_fields(const RunConfig& cfg) {
  const auto g = carnot::derive_group_law(load_group(cfg));
  const auto side = cfg.right ? carnot::Side::right : carnot::Side::left;
  const auto fields = carnot::invariant_fields(g, side);
  nlohmann::json payload;
  payload["side"] = cfg.right ? "right" : "left";
  payload["fields"] = nlohmann::json::array();
  std::string text;
  int i = 0;
  for (const carnot::VarId v : g.algebra.basis()) {
    const auto& op = fields[static_cast<size_t>(i++)];
    nlohmann::json f;
    f["name"] = field_name(v, side);
    f["operator"] = op.str();
    payload["fields"].push_back(f);
    text += field_name(v, side) + " = " + op.str() + "\n";
  }
  return deliver_artifact(cfg, "fields", g.algebra.name(), payload, text);
}

int run_commutators(const RunConfig& cfg) {
  const auto g = carnot::derive_group_law(load_group(cfg));
  const auto left = carnot::invariant_fields(g, carnot::Side::left);
  const auto right = carnot::invariant_fields(g, carnot::Side::right);
  const auto basis = g.algebra.basis();
  const int m = g.algebra.horizontal_dim();

  carnot::CheckReport report;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const auto c = carnot::commutator(left[static_cast<size_t>(i)],
                                        right[static_cast<size_t>(j)]);
      report.add("left_right_commute_X" + std::to_string(i + 1) + "_Xt" +
                     std::to_string(j + 1),
                 c.is_zero(), c.is_zero() ? std::optional<std::string>{} : c.str());
    }
  // horizontal brackets, informational
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const auto c = carnot::commutator(left[static_cast<size_t>(i)],
                                        left[static_cast<size_t>(j)]);
      report.add("bracket_X" + std::to_string(i + 1) + "_X" + std::to_string(j + 1),
                 true, c.str());
    }
  return deliver_report(cfg, "commutators", g.algebra.name(), report);
}

int run_zfield(const RunConfig& cfg) {
  const auto g = carnot::derive_group_law(load_group(cfg));
  const auto dec = carnot::z_decompose(g);
  const carnot::Poly lam = carnot::Poly::variable(carnot::VarId::lambda());
  std::map<carnot::VarId, carnot::Poly> dil;
  for (const carnot::VarId v : g.algebra.basis())
    dil[v] = carnot::Poly::variable(v) * lam.pow(v.weight());

  carnot::CheckReport report;
  report.add("generator", true, carnot::generator_field(g).str());
  bool layer1_ok = true, homog_ok = true;
  for (const auto& [v, q] : dec.q) {
    if (v.layer == 1 && !(q == carnot::Poly::variable(v))) layer1_ok = false;
    if (!q.is_zero() && !(q.substituted(dil) == q * lam.pow(v.weight()))) homog_ok = false;
    report.add("q_" + v.str(), true, q.str());
  }
  report.add("q_layer1_matches_coordinates", layer1_ok);
  report.add("q_weighted_homogeneous", homog_ok);
  report.add("residual_zero", true);  // z_decompose throws otherwise
  return deliver_report(cfg, "zfield", g.algebra.name(), report);
}

int run_harmonic(const RunConfig& cfg) {
  const auto g = carnot::derive_group_law(load_group(cfg));
  const auto hb = carnot::harmonic_basis(g, cfg.degree);
  nlohmann::json payload;
  payload["degree"] = hb.weighted_degree;
  payload["dimension"] = hb.dimension;
  payload["basis"] = nlohmann::json::array();
  std::string text = "dimension " + std::to_string(hb.dimension) + "\n";
  for (const auto& b : hb.basis) {
    payload["basis"].push_back(b.str());
    text += b.str() + "\n";
  }
  return deliver_artifact(cfg, "harmonic", g.algebra.name(), payload, text);
}

int run_bochner(const RunConfig& cfg) {
  const auto g = carnot::derive_group_law(load_group(cfg));
  carnot::CheckReport report;
  for (int t = 0; t < cfg.trials; ++t) {
    const long seed = cfg.seed + t;
    const carnot::Poly f = carnot::random_poly(static_cast<uint64_t>(seed),
                                               g.algebra.layer_dims(), cfg.max_degree);
    const auto res = carnot::bochner_right_residual(g, f, seed, cfg.max_degree);
    report.add("bochner_right_seed_" + std::to_string(seed), res.is_zero(),
               res.is_zero() ? std::optional<std::string>{} : res.residual.str());
  }
  if (g.algebra.name() == "heisenberg:1") {
    const auto res = carnot::bochner_right_residual(g, carnot::counterexample_f());
    report.add("bochner_right_counterexample_f", res.is_zero(),
               res.is_zero() ? std::optional<std::string>{} : res.residual.str());
  }
  return deliver_report(cfg, "bochner", g.algebra.name(), report);
}

int run_difference(const RunConfig& cfg) {
  const auto g = carnot::derive_group_law(load_group(cfg));
  carnot::CheckReport report;
  for (int t = 0; t < cfg.trials; ++t) {
    const long seed = cfg.seed + t;
    const carnot::Poly f = carnot::random_poly(static_cast<uint64_t>(seed),
                                               g.algebra.layer_dims(), cfg.max_degree);
    const auto res = carnot::step2_difference_residual(g, f, seed, cfg.max_degree);
    report.add("step2_difference_seed_" + std::to_string(seed), res.is_zero(),
               res.is_zero() ? std::optional<std::string>{} : res.residual.str());
  }
  return deliver_report(cfg, "difference", g.algebra.name(), report);
}

int run_babybo(const RunConfig& cfg) {
  const auto g = carnot::derive_group_law(load_group(cfg));
  carnot::CheckReport report;
  for (int t = 0; t < cfg.trials; ++t) {
    const long seed = cfg.seed + t;
    const carnot::Poly f = carnot::random_poly(static_cast<uint64_t>(seed),
                                               g.algebra.layer_dims(), cfg.max_degree);
    const auto res = carnot::euclidean_bochner_residual(g, f, seed, cfg.max_degree);
    report.add("euclidean_bochner_seed_" + std::to_string(seed), res.is_zero(),
               res.is_zero() ? std::optional<std::string>{} : res.residual.str());
  }
  return deliver_report(cfg, "babybo", g.algebra.name(), report);
}

int run_counterexample(const RunConfig& cfg) {
  return deliver_report(cfg, "counterexample", "heisenberg:1",
                        carnot::verify_counterexample());
}

int run_radius(const RunConfig& cfg) {
  const auto cert = carnot::strict_max_radius(carnot::counterexample_f());
  nlohmann::json payload = nlohmann::json::parse(cert.to_json_text());
  std::string text = "radius " + cert.radius.str() + "\n";
  text += "bound_constant " + cert.bound_constant.str() + "\n";
  text += "grid_samples " + std::to_string(cert.grid_samples.size()) + "\n";
  return deliver_artifact(cfg, "radius", "heisenberg:1", payload, text);
}

int run_witness(const RunConfig& cfg) {
  const carnot::Rational r = carnot::Rational::parse(cfg.r);
  carnot::CheckReport report;
  try {
    const carnot::Point w = carnot::right_excess_witness(carnot::counterexample_f(), r);
    const auto g = carnot::derive_group_law(carnot::StratifiedLieAlgebra::builtin("heisenberg:1"));
    const carnot::Rational value =
        carnot::carre_du_champ(g, carnot::counterexample_f(), carnot::Side::right)
            .evaluated(w);
    std::string point_text;
    for (const auto& [v, c] : w) {
      if (!point_text.empty()) point_text += ", ";
      point_text += v.str() + " = " + c.str();
    }
    report.add("right_excess_witness_found", true, point_text + "; value " + value.str());
  } catch (const carnot::NoWitnessFound& e) {
    report.add("right_excess_witness_found", false, e.what());
  }
  return deliver_report(cfg, "witness", "heisenberg:1", report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact symbolic calculus and verification for Carnot groups"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* validate = app.add_subcommand("validate", "check the Lie algebra axioms");
  add_common(validate, cfg);
  auto* law = app.add_subcommand("law", "print the exact group law");
  add_common(law, cfg);
  auto* fields = app.add_subcommand("fields", "print the invariant vector fields");
  add_common(fields, cfg);
  fields->add_flag("--right", cfg.right, "right-invariant fields instead of left");
  auto* commutators =
      app.add_subcommand("commutators", "verify the left/right commutation identities");
  add_common(commutators, cfg);
  auto* zfield =
      app.add_subcommand("zfield", "dilation generator and its frame decomposition");
  add_common(zfield, cfg);
  auto* harmonic = app.add_subcommand("harmonic", "basis of harmonic polynomials");
  add_common(harmonic, cfg);
  harmonic->add_option("--degree", cfg.degree, "weighted degree")
      ->check(CLI::NonNegativeNumber);
  auto* bochner = app.add_subcommand("bochner", "right Bochner identity residuals");
  add_common(bochner, cfg);
  auto* difference =
      app.add_subcommand("difference", "step-2 left/right difference residuals");
  add_common(difference, cfg);
  auto* babybo = app.add_subcommand("babybo", "flat Bochner identity residuals");
  add_common(babybo, cfg);
  auto* counterexample = app.add_subcommand(
      "counterexample", "verify the maximum-modulus counterexample on heisenberg:1");
  add_common(counterexample, cfg);
  auto* radius = app.add_subcommand(
      "radius", "strict-maximum radius certificate for the counterexample");
  add_common(radius, cfg);
  auto* witness = app.add_subcommand(
      "witness", "search a right carre du champ excess point near the identity");
  add_common(witness, cfg);
  witness->add_option("--r", cfg.r, "euclidean search radius as p/q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // usage errors exit 2; --help stays 0
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return run_validate(cfg);
    if (law->parsed()) return run_law(cfg);
    if (fields->parsed()) return run_fields(cfg);
    if (commutators->parsed()) return run_commutators(cfg);
    if (zfield->parsed()) return run_zfield(cfg);
    if (harmonic->parsed()) return run_harmonic(cfg);
    if (bochner->parsed()) return run_bochner(cfg);
    if (difference->parsed()) return run_difference(cfg);
    if (babybo->parsed()) return run_babybo(cfg);
    if (counterexample->parsed()) return run_counterexample(cfg);
    if (radius->parsed()) return run_radius(cfg);
    if (witness->parsed()) return run_witness(cfg);
  } catch (const carnot::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
