#include "carnot/lie_algebra.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "carnot/errors.hpp"
#include "carnot/matrix.hpp"

namespace carnot {

namespace {

constexpr int kMaxStep = 6;
constexpr int kMaxDim = 64;

std::string pair_str(VarId a, VarId b) {
  return "[e(" + std::to_string(a.layer) + "," + std::to_string(a.index) + "), e(" +
         std::to_string(b.layer) + "," + std::to_string(b.index) + ")]";
}

}  // namespace

StratifiedLieAlgebra::StratifiedLieAlgebra(std::vector<int> layer_dims, std::string name)
    : layer_dims_(std::move(layer_dims)), name_(std::move(name)) {
  if (layer_dims_.empty()) throw InvalidAlgebra("algebra needs at least one layer");
  for (const int m : layer_dims_)
    if (m <= 0) throw InvalidAlgebra("layer dimensions must be positive");
}

int StratifiedLieAlgebra::dim() const {
  int n = 0;
  for (const int m : layer_dims_) n += m;
  return n;
}

bool StratifiedLieAlgebra::is_basis_id(VarId v) const {
  return v.copy == 0 && v.layer >= 1 && v.layer <= step() && v.index >= 1 &&
         v.index <= layer_dim(v.layer);
}

std::vector<VarId> StratifiedLieAlgebra::basis() const {
  std::vector<VarId> b;
  for (int j = 1; j <= step(); ++j)
    for (int l = 1; l <= layer_dim(j); ++l) b.push_back(VarId{j, l, 0});
  return b;
}

void StratifiedLieAlgebra::add_bracket(VarId left, VarId right,
                                       std::vector<BracketTerm> result) {
  if (!is_basis_id(left) || !is_basis_id(right))
    throw InvalidAlgebra("bracket pair " + pair_str(left, right) + " out of range");
  if (!(left < right))
    throw InvalidAlgebra("bracket pair " + pair_str(left, right) +
                         " not lexicographically ordered");
  for (const auto& t : result)
    if (!is_basis_id(t.target))
      throw InvalidAlgebra("bracket target out of range in " + pair_str(left, right));
  std::vector<BracketTerm> filtered;
  for (auto& t : result)
    if (!t.coeff.is_zero()) filtered.push_back(std::move(t));
  if (filtered.empty()) return;
  if (!brackets_.emplace(std::make_pair(left, right), std::move(filtered)).second)
    throw InvalidAlgebra("duplicate bracket pair " + pair_str(left, right));
}

std::vector<BracketTerm> StratifiedLieAlgebra::basis_bracket(VarId a, VarId b) const {
  if (a == b) return {};
  const bool flip = b < a;
  const auto key = flip ? std::make_pair(b, a) : std::make_pair(a, b);
  const auto it = brackets_.find(key);
  if (it == brackets_.end()) return {};
  if (!flip) return it->second;
  std::vector<BracketTerm> neg = it->second;
  for (auto& t : neg) t.coeff = -t.coeff;
  return neg;
}

StratifiedLieAlgebra StratifiedLieAlgebra::builtin(const std::string& spec) {
  auto parse_n = [&](const std::string& prefix) -> int {
    const std::string tail = spec.substr(prefix.size());
    if (tail.empty() || tail.size() > 6)
      throw UnknownBuiltin("builtin '" + spec + "': missing or oversized parameter");
    for (const char c : tail)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw UnknownBuiltin("builtin '" + spec + "': malformed parameter");
    return std::stoi(tail);
  };

  if (spec.rfind("heisenberg:", 0) == 0) {
    const int n = parse_n("heisenberg:");
    if (n < 1) throw UnknownBuiltin("heisenberg:n needs n >= 1");
    StratifiedLieAlgebra a({2 * n, 1}, spec);
    for (int i = 1; i <= n; ++i)
      a.add_bracket(VarId::z(i), VarId::z(n + i), {{VarId::s(2, 1), Rational(1)}});
    return a;
  }
  if (spec.rfind("abelian:", 0) == 0) {
    const int n = parse_n("abelian:");
    if (n < 1) throw UnknownBuiltin("abelian:n needs n >= 1");
    return StratifiedLieAlgebra({n}, spec);
  }
  if (spec == "engel") {
    StratifiedLieAlgebra a({2, 1, 1}, spec);
    a.add_bracket(VarId::z(1), VarId::z(2), {{VarId::s(2, 1), Rational(1)}});
    a.add_bracket(VarId::z(1), VarId::s(2, 1), {{VarId::s(3, 1), Rational(1)}});
    return a;
  }
  if (spec.rfind("free2:", 0) == 0) {
    const int m = parse_n("free2:");
    if (m < 2) throw UnknownBuiltin("free2:m needs m >= 2");
    StratifiedLieAlgebra a({m, m * (m - 1) / 2}, spec);
    int l = 1;
    for (int i = 1; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j)
        a.add_bracket(VarId::z(i), VarId::z(j), {{VarId::s(2, l++), Rational(1)}});
    return a;
  }
  throw UnknownBuiltin("unknown builtin '" + spec +
                       "' (expected heisenberg:n, abelian:n, engel, free2:m)");
}

CheckReport StratifiedLieAlgebra::validate() const {
  CheckReport report;

  // Storage enforces ordered pairs and in-range ids, so closure under the
  // antisymmetry convention reduces to re-checking the invariants hold.
  {
    bool ok = true;
    std::string witness;
    for (const auto& [pair, terms] : brackets_) {
      if (!(pair.first < pair.second) || !is_basis_id(pair.first) ||
          !is_basis_id(pair.second)) {
        ok = false;
        witness = pair_str(pair.first, pair.second);
        break;
      }
      for (const auto& t : terms)
        if (!is_basis_id(t.target) || t.coeff.is_zero()) {
          ok = false;
          witness = pair_str(pair.first, pair.second);
          break;
        }
    }
    report.add("antisymmetry_closure", ok,
               ok ? std::nullopt : std::optional<std::string>(witness));
  }

  // Grading: [g_j1, g_j2] must land in g_{j1+j2}; beyond the step nothing
  // may be stored.
  {
    bool ok = true;
    std::string witness;
    for (const auto& [pair, terms] : brackets_) {
      const int want = pair.first.layer + pair.second.layer;
      for (const auto& t : terms) {
        if (t.target.layer != want) {
          ok = false;
          witness = pair_str(pair.first, pair.second) + " -> e(" +
                    std::to_string(t.target.layer) + "," + std::to_string(t.target.index) +
                    "), expected layer " + std::to_string(want) +
                    (want > step() ? " (absent)" : "");
          break;
        }
      }
      if (!ok) break;
    }
    report.add("grading", ok, ok ? std::nullopt : std::optional<std::string>(witness));
  }

  // Jacobi identity on all ordered basis triples.
  {
    bool ok = true;
    std::string witness;
    const std::vector<VarId> b = basis();
    auto add_terms = [](std::map<VarId, Rational>& acc,
                        const std::vector<BracketTerm>& ts, const Rational& scale) {
      for (const auto& t : ts) {
        auto [it, inserted] = acc.emplace(t.target, t.coeff * scale);
        if (!inserted) {
          it->second += t.coeff * scale;
          if (it->second.is_zero()) acc.erase(it);
        }
      }
    };
    for (size_t i = 0; i < b.size() && ok; ++i)
      for (size_t j = i + 1; j < b.size() && ok; ++j)
        for (size_t l = j + 1; l < b.size() && ok; ++l) {
          std::map<VarId, Rational> acc;
          const VarId ea = b[i], eb = b[j], ec = b[l];
          auto cyclic = [&](VarId u, VarId v, VarId w) {
            // [[u, v], w]
            for (const auto& t : basis_bracket(u, v))
              add_terms(acc, basis_bracket(t.target, w), t.coeff);
          };
          cyclic(ea, eb, ec);
          cyclic(eb, ec, ea);
          cyclic(ec, ea, eb);
          if (!acc.empty()) {
            ok = false;
            witness = "(e(" + std::to_string(ea.layer) + "," + std::to_string(ea.index) +
                      "), e(" + std::to_string(eb.layer) + "," + std::to_string(eb.index) +
                      "), e(" + std::to_string(ec.layer) + "," + std::to_string(ec.index) +
                      "))";
          }
        }
    report.add("jacobi", ok, ok ? std::nullopt : std::optional<std::string>(witness));
  }

  // Stratification: brackets of g_1 with g_{j-1} must span g_j, full rank
  // over the rationals.
  {
    bool ok = true;
    std::string witness;
    for (int j = 2; j <= step() && ok; ++j) {
      const int mj = layer_dim(j);
      const int m1 = layer_dim(1);
      const int mprev = layer_dim(j - 1);
      RatMatrix rowsmat(m1 * mprev, mj);
      int row = 0;
      for (int i = 1; i <= m1; ++i)
        for (int w = 1; w <= mprev; ++w, ++row)
          for (const auto& t : basis_bracket(VarId::z(i), VarId{j - 1, w, 0}))
            if (t.target.layer == j) rowsmat.at(row, t.target.index - 1) = t.coeff;
      const int r = rowsmat.rank();
      if (r != mj) {
        ok = false;
        witness = "layer " + std::to_string(j) + " spanned with rank " +
                  std::to_string(r) + " < " + std::to_string(mj);
      }
    }
    report.add("stratification", ok,
               ok ? std::nullopt : std::optional<std::string>(witness));
  }

  return report;
}

namespace {

VarId varid_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer())
    throw ParseError("group file: " + where + " must be [layer, index]");
  return VarId{j[0].get<int>(), j[1].get<int>(), 0};
}

}  // namespace

StratifiedLieAlgebra StratifiedLieAlgebra::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("group file: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("group file: top level must be an object");
  if (!j.contains("layers") || !j["layers"].is_array())
    throw ParseError("group file: field 'layers' missing or not an array");
  std::vector<int> dims;
  for (const auto& d : j["layers"]) {
    if (!d.is_number_integer() || d.get<int>() <= 0)
      throw ParseError("group file: field 'layers' must hold positive integers");
    dims.push_back(d.get<int>());
  }
  if (static_cast<int>(dims.size()) > kMaxStep)
    throw LimitExceeded("group file: step " + std::to_string(dims.size()) +
                        " exceeds the supported maximum " + std::to_string(kMaxStep));
  int total = 0;
  for (const int d : dims) total += d;
  if (total > kMaxDim)
    throw LimitExceeded("group file: total dimension " + std::to_string(total) +
                        " exceeds the supported maximum " + std::to_string(kMaxDim));

  std::string name = "group";
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("group file: field 'name' must be a string");
    name = j["name"].get<std::string>();
  }

  StratifiedLieAlgebra a(dims, name);
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array())
      throw ParseError("group file: field 'brackets' must be an array");
    int idx = 0;
    for (const auto& br : j["brackets"]) {
      const std::string where = "brackets[" + std::to_string(idx) + "]";
      if (!br.is_object() || !br.contains("left") || !br.contains("right") ||
          !br.contains("result"))
        throw ParseError("group file: " + where +
                         " must be an object with left/right/result");
      const VarId left = varid_from_json(br["left"], where + ".left");
      const VarId right = varid_from_json(br["right"], where + ".right");
      if (!br["result"].is_array())
        throw ParseError("group file: " + where + ".result must be an array");
      std::vector<BracketTerm> terms;
      int tidx = 0;
      for (const auto& rt : br["result"]) {
        const std::string twhere = where + ".result[" + std::to_string(tidx) + "]";
        if (!rt.is_array() || rt.size() != 2 || !rt[1].is_string())
          throw ParseError("group file: " + twhere + " must be [[layer, index], \"p/q\"]");
        terms.push_back(
            {varid_from_json(rt[0], twhere), Rational::parse(rt[1].get<std::string>())});
        ++tidx;
      }
      try {
        a.add_bracket(left, right, std::move(terms));
      } catch (const InvalidAlgebra& e) {
        throw ParseError("group file: " + where + ": " + e.what());
      }
      ++idx;
    }
  }
  return a;
}

StratifiedLieAlgebra StratifiedLieAlgebra::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("group file: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string StratifiedLieAlgebra::to_json_text() const {
  nlohmann::json j;
  j["name"] = name_;
  j["layers"] = layer_dims_;
  j["brackets"] = nlohmann::json::array();
  for (const auto& [pair, terms] : brackets_) {
    nlohmann::json br;
    br["left"] = {pair.first.layer, pair.first.index};
    br["right"] = {pair.second.layer, pair.second.index};
    br["result"] = nlohmann::json::array();
    for (const auto& t : terms)
      br["result"].push_back({{t.target.layer, t.target.index}, t.coeff.str()});
    j["brackets"].push_back(br);
  }
  return j.dump(2) + "\n";
}

AlgebraElement AlgebraElement::zero(const StratifiedLieAlgebra& a) {
  return AlgebraElement{&a, {}};
}

AlgebraElement AlgebraElement::basis_vector(const StratifiedLieAlgebra& a, VarId v) {
  AlgebraElement e{&a, {}};
  e.add(v, Poly(1));
  return e;
}

AlgebraElement AlgebraElement::formal_point(const StratifiedLieAlgebra& a, int copy) {
  AlgebraElement e{&a, {}};
  for (const VarId v : a.basis()) e.add(v, Poly::variable(v.with_copy(copy)));
  return e;
}

void AlgebraElement::add(VarId v, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs.emplace(v, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (algebra != o.algebra) throw Error("AlgebraElement: mixed algebras");
  for (const auto& [v, c] : o.coeffs) add(v, c);
  return *this;
}

AlgebraElement AlgebraElement::scaled(const Poly& c) const {
  AlgebraElement r{algebra, {}};
  for (const auto& [v, p] : coeffs) r.add(v, p * c);
  return r;
}

bool AlgebraElement::is_zero() const { return coeffs.empty(); }

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  return algebra == o.algebra && coeffs == o.coeffs;
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.algebra != b.algebra) throw Error("bracket: mixed algebras");
  AlgebraElement r{a.algebra, {}};
  for (const auto& [va, ca] : a.coeffs)
    for (const auto& [vb, cb] : b.coeffs) {
      const auto terms = a.algebra->basis_bracket(va, vb);
      if (terms.empty()) continue;
      const Poly prod = ca * cb;
      for (const auto& t : terms) r.add(t.target, prod.scaled(t.coeff));
    }
  return r;
}

namespace {

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// One Dynkin summand: the right-nested commutator of the word
// x^{r_1} y^{s_1} ... x^{r_n} y^{s_n}.
AlgebraElement nested_word_bracket(const AlgebraElement& x, const AlgebraElement& y,
                                   const std::vector<std::pair<int, int>>& seq) {
  std::vector<const AlgebraElement*> word;
  for (const auto& [r, s] : seq) {
    for (int i = 0; i < r; ++i) word.push_back(&x);
    for (int i = 0; i < s; ++i) word.push_back(&y);
  }
  AlgebraElement acc = *word.back();
  for (size_t i = word.size() - 1; i-- > 0;) acc = bracket(*word[i], acc);
  return acc;
}

}  // namespace

AlgebraElement bch(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.algebra != y.algebra) throw Error("bch: mixed algebras");
  const int max_order = x.algebra->step();
  AlgebraElement sum = AlgebraElement::zero(*x.algebra);

  std::vector<std::pair<int, int>> seq;
  // Depth-first enumeration of all blocks (r_i, s_i) != (0, 0) whose total
  // letter count stays within the nilpotency step.
  auto walk = [&](auto&& self, int total) -> void {
    if (!seq.empty()) {
      const int n = static_cast<int>(seq.size());
      // Words ending in a repeated letter have a vanishing innermost bracket.
      const auto& [rl, sl] = seq.back();
      const bool trivially_zero = total >= 2 && (sl >= 2 || (sl == 0 && rl >= 2));
      if (!trivially_zero) {
        long denom = static_cast<long>(n) * total;
        for (const auto& [r, s] : seq) denom *= factorial(r) * factorial(s);
        const Rational coeff(n % 2 == 1 ? 1 : -1, denom);
        AlgebraElement term = nested_word_bracket(x, y, seq);
        sum += term.scaled(Poly(coeff));
      }
    }
    for (int block = 1; total + block <= max_order; ++block)
      for (int r = 0; r <= block; ++r) {
        seq.push_back({r, block - r});
        self(self, total + block);
        seq.pop_back();
      }
  };
  walk(walk, 0);
  return sum;
}

}  // namespace carnot
