#include "carnot/group.hpp"

#include <algorithm>

#include "carnot/errors.hpp"
#include "carnot/matrix.hpp"

namespace carnot {

DiffOp DiffOp::partial(VarId v) {
  DiffOp d;
  d.terms_.emplace(Monomial(v), Poly(1));
  return d;
}

int DiffOp::order() const {
  int o = 0;
  for (const auto& [idx, c] : terms_) o = std::max(o, idx.euclidean_degree());
  return o;
}

Poly DiffOp::coefficient(const Monomial& idx) const {
  const auto it = terms_.find(idx);
  return it == terms_.end() ? Poly() : it->second;
}

void DiffOp::add_term(const Monomial& idx, const Poly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(idx, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  for (const auto& [idx, c] : o.terms_) add_term(idx, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
  return *this;
}

DiffOp DiffOp::scaled(const Poly& c) const {
  DiffOp r;
  for (const auto& [idx, p] : terms_) r.add_term(idx, p * c);
  return r;
}

namespace {

Poly iterated_partial(const Poly& f, const Monomial& idx) {
  Poly r = f;
  for (const auto& [v, e] : idx.exponents())
    for (int i = 0; i < e && !r.is_zero(); ++i) r = r.differentiated(v);
  return r;
}

}  // namespace

Poly DiffOp::apply(const Poly& f) const {
  Poly r;
  for (const auto& [idx, c] : terms_) r += c * iterated_partial(f, idx);
  return r;
}

DiffOp DiffOp::compose(const DiffOp& o) const {
  // a o b: expand each d^alpha (Q d^beta) with the general Leibniz rule,
  // summing binom(alpha, gamma) d^gamma(Q) d^{alpha - gamma + beta}.
  DiffOp r;
  for (const auto& [alpha, p] : terms_) {
    for (const auto& [beta, q] : o.terms_) {
      // Enumerate all gamma <= alpha together with the multinomial factor.
      const auto& avars = alpha.exponents();
      std::vector<int> gamma(avars.size(), 0);
      auto emit = [&]() {
        Rational binom(1);
        std::vector<std::pair<VarId, int>> gexp, rem;
        for (size_t i = 0; i < avars.size(); ++i) {
          const auto [v, a] = avars[i];
          const int gexp_i = gamma[i];
          // C(a, g) computed incrementally in exact arithmetic.
          long c = 1;
          for (int t = 0; t < gexp_i; ++t) c = c * (a - t) / (t + 1);
          binom *= Rational(c);
          if (gexp_i > 0) gexp.push_back({v, gexp_i});
          if (a - gexp_i > 0) rem.push_back({v, a - gexp_i});
        }
        const Poly dq = iterated_partial(q, Monomial::from_exponents(gexp));
        if (dq.is_zero()) return;
        const Monomial idx = Monomial::from_exponents(rem).times(beta);
        r.add_term(idx, p * dq.scaled(binom));
      };
      // Odometer over gamma.
      while (true) {
        emit();
        size_t i = 0;
        for (; i < avars.size(); ++i) {
          if (gamma[i] < avars[i].second) {
            ++gamma[i];
            break;
          }
          gamma[i] = 0;
        }
        if (i == avars.size()) break;
      }
    }
  }
  return r;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) {
  return a.compose(b) - b.compose(a);
}

std::string DiffOp::str() const {
  if (terms_.empty()) return "0";
  // Flatten to (multi-index, monomial, rational) triples in canonical order.
  std::string s;
  for (const auto& [idx, coeff] : terms_) {
    for (const auto& [m, c] : coeff.terms()) {
      const bool neg = c.sign() < 0;
      if (s.empty())
        s = neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      const Rational a = c.abs();
      std::string factor;
      if (!(a == Rational(1))) factor = a.str();
      if (!m.is_unit()) {
        if (!factor.empty()) factor += "*";
        factor += m.str();
      }
      if (!idx.is_unit()) {
        if (!factor.empty()) factor += "*";
        factor += "d[";
        bool first = true;
        for (const auto& [v, e] : idx.exponents())
          for (int i = 0; i < e; ++i) {
            if (!first) factor += ",";
            factor += v.str();
            first = false;
          }
        factor += "]";
      }
      if (factor.empty()) factor = "1";
      s += factor;
    }
  }
  return s;
}

DiffOp DiffOp::parse(const std::string& text) {
  // Same shape as the polynomial grammar with an optional trailing d[...]
  // factor per term; reuse the polynomial parser by splitting on it.
  DiffOp op;
  size_t pos = 0;
  auto skip_ws = [&]() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (text.compare(pos, 1, "0") == 0 && pos + 1 >= text.size()) return op;
  bool neg = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    neg = text[pos] == '-';
    ++pos;
  }
  while (pos < text.size()) {
    // Grab one term: up to the next top-level ' + ' / ' - '.
    size_t term_start = pos;
    size_t dstart = std::string::npos;
    while (pos < text.size()) {
      if (text[pos] == 'd' && pos + 1 < text.size() && text[pos + 1] == '[') {
        dstart = pos;
        pos = text.find(']', pos);
        if (pos == std::string::npos) throw ParseError("DiffOp: unterminated d[...]");
        ++pos;
        break;
      }
      if (text[pos] == '+' || text[pos] == '-') break;
      ++pos;
    }
    std::string coeff_text =
        text.substr(term_start, (dstart == std::string::npos ? pos : dstart) - term_start);
    // Trim trailing '*' and whitespace before d[...].
    while (!coeff_text.empty() &&
           (std::isspace(static_cast<unsigned char>(coeff_text.back())) ||
            coeff_text.back() == '*'))
      coeff_text.pop_back();
    if (coeff_text.empty()) coeff_text = "1";
    Poly coeff = Poly::parse(coeff_text);
    if (neg) coeff = -coeff;

    Monomial idx;
    if (dstart != std::string::npos) {
      const size_t lb = text.find('[', dstart);
      const size_t rb = text.find(']', dstart);
      std::string inner = text.substr(lb + 1, rb - lb - 1);
      std::vector<std::pair<VarId, int>> exps;
      size_t p = 0;
      while (p < inner.size()) {
        size_t comma = inner.find(',', p);
        if (comma == std::string::npos) comma = inner.size();
        std::string vtext = inner.substr(p, comma - p);
        // Parse a single variable via the polynomial parser.
        const Poly vp = Poly::parse(vtext);
        const auto vars = vp.variables();
        if (vars.size() != 1 || !(vp == Poly::variable(*vars.begin())))
          throw ParseError("DiffOp: bad derivative variable '" + vtext + "'");
        exps.push_back({*vars.begin(), 1});
        p = comma + 1;
      }
      idx = Monomial::from_exponents(std::move(exps));
    }
    op.add_term(idx, coeff);

    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] == '+')
      neg = false;
    else if (text[pos] == '-')
      neg = true;
    else
      throw ParseError("DiffOp: expected '+' or '-' at position " + std::to_string(pos));
    ++pos;
    skip_ws();
  }
  return op;
}

const Poly& GroupLaw::component(VarId v) const {
  int i = 0;
  for (const VarId b : algebra.basis()) {
    if (b == v.with_copy(0)) return law.components[static_cast<size_t>(i)];
    ++i;
  }
  throw Error("GroupLaw: no component for " + v.str());
}

GroupLaw derive_group_law(const StratifiedLieAlgebra& a) {
  if (!a.validate().all_pass())
    throw InvalidAlgebra("derive_group_law: algebra '" + a.name() +
                         "' fails validation");
  const AlgebraElement first = AlgebraElement::formal_point(a, 0);
  const AlgebraElement second = AlgebraElement::formal_point(a, 1);
  const AlgebraElement prod = bch(first, second);
  PolyMap law;
  law.input_arity = 2 * a.dim();
  for (const VarId v : a.basis()) {
    const auto it = prod.coeffs.find(v);
    law.components.push_back(it == prod.coeffs.end() ? Poly() : it->second);
  }
  return GroupLaw{a, std::move(law)};
}

std::vector<DiffOp> invariant_fields(const GroupLaw& g, Side side) {
  // Left field at e_b: d/dt f(p o exp(t e_b))|_0, i.e. differentiate the law
  // by the second-factor coordinate b at second factor = identity. Right
  // fields swap the roles of the factors.
  const std::vector<VarId> basis = g.algebra.basis();
  std::map<VarId, Poly> kill_other;   // other factor -> 0
  std::map<VarId, Poly> rename_self;  // surviving factor -> copy 0
  const int self_copy = side == Side::left ? 0 : 1;
  const int other_copy = side == Side::left ? 1 : 0;
  for (const VarId v : basis) {
    kill_other[v.with_copy(other_copy)] = Poly();
    rename_self[v.with_copy(self_copy)] = Poly::variable(v);
  }
  // substituted() requires every present variable to have an image.
  std::map<VarId, Poly> images = kill_other;
  for (const auto& [v, p] : rename_self) images[v] = p;

  std::vector<DiffOp> fields;
  for (const VarId b : basis) {
    DiffOp op;
    int i = 0;
    for (const VarId w : basis) {
      const Poly& comp = g.law.components[static_cast<size_t>(i++)];
      Poly c = comp.differentiated(b.with_copy(other_copy)).substituted(images);
      op.add_term(Monomial(w), c);
    }
    fields.push_back(std::move(op));
  }
  return fields;
}

std::vector<DiffOp> horizontal_fields(const GroupLaw& g, Side side) {
  auto all = invariant_fields(g, side);
  all.resize(static_cast<size_t>(g.algebra.horizontal_dim()));
  return all;
}

DiffOp generator_field(const GroupLaw& g) {
  DiffOp z;
  for (const VarId v : g.algebra.basis())
    z.add_term(Monomial(v), Poly::variable(v).scaled(Rational(v.weight())));
  return z;
}

ZDecomposition z_decompose(const GroupLaw& g) {
  const std::vector<VarId> basis = g.algebra.basis();
  const std::vector<DiffOp> frame = invariant_fields(g, Side::left);
  const DiffOp z = generator_field(g);

  // The frame coefficient matrix is unipotent in the graded ordering: the
  // coefficient of d_w in X_{j,l} is delta at w = (j,l) plus terms of higher
  // weight only. Back-substitute layer by layer.
  ZDecomposition out;
  std::map<VarId, Poly> q;
  for (size_t bi = 0; bi < basis.size(); ++bi) {
    const VarId w = basis[bi];
    Poly rhs = z.coefficient(Monomial(w));
    for (size_t pj = 0; pj < bi; ++pj) {
      const VarId prev = basis[pj];
      if (prev.weight() >= w.weight()) continue;
      rhs -= q[prev] * frame[pj].coefficient(Monomial(w));
    }
    q[w] = rhs;
  }

  // The decomposition must reproduce the generator exactly.
  DiffOp residual = z;
  for (size_t bi = 0; bi < basis.size(); ++bi)
    residual -= frame[bi].scaled(q[basis[bi]]);
  if (!residual.is_zero())
    throw SingularFrame("z_decompose: nonzero residual " + residual.str());

  for (size_t bi = 0; bi < basis.size(); ++bi) {
    out.q.push_back({basis[bi], q[basis[bi]]});
    out.frame.push_back({basis[bi], frame[bi]});
  }
  return out;
}

int bracket_generating_step(const std::vector<DiffOp>& horizontal, const GroupLaw& g) {
  const std::vector<VarId> basis = g.algebra.basis();
  const int n = g.algebra.dim();
  Point origin;
  for (const VarId v : basis) origin[v] = Rational(0);

  auto vector_at_identity = [&](const DiffOp& op) {
    std::vector<Rational> row(static_cast<size_t>(n), Rational(0));
    int i = 0;
    for (const VarId v : basis)
      row[static_cast<size_t>(i++)] = op.coefficient(Monomial(v)).evaluated(origin);
    return row;
  };

  std::vector<std::vector<Rational>> span_rows;
  auto rank_of = [&]() {
    RatMatrix m(static_cast<int>(span_rows.size()), n);
    for (size_t i = 0; i < span_rows.size(); ++i)
      for (int j = 0; j < n; ++j) m.at(static_cast<int>(i), j) = span_rows[i][size_t(j)];
    return m.rank();
  };

  std::vector<DiffOp> level = horizontal;
  for (const auto& op : level) span_rows.push_back(vector_at_identity(op));
  for (int depth = 1; depth <= g.algebra.step(); ++depth) {
    if (rank_of() == n) return depth;
    std::vector<DiffOp> next;
    for (const auto& h : horizontal)
      for (const auto& op : level) {
        DiffOp c = commutator(h, op);
        if (!c.is_zero()) next.push_back(std::move(c));
      }
    level = std::move(next);
    for (const auto& op : level) span_rows.push_back(vector_at_identity(op));
  }
  throw NotGenerating("horizontal fields do not bracket-generate within step " +
                      std::to_string(g.algebra.step()));
}

GaugeValue gauge_of(const Point& p) {
  GaugeValue g;
  g.point = p;
  for (const auto& [v, value] : p) {
    if (v.layer == 0) continue;  // formal parameters carry no gauge weight
    if (static_cast<int>(g.layer_magnitudes.size()) < v.layer)
      g.layer_magnitudes.resize(static_cast<size_t>(v.layer), Rational(0));
    Rational& m = g.layer_magnitudes[static_cast<size_t>(v.layer - 1)];
    if (value.abs() > m) m = value.abs();
  }
  return g;
}

bool GaugeValue::inside(const Rational& r) const {
  if (r.sign() <= 0) throw NonpositiveRadius("gauge: radius must be positive");
  for (size_t j = 0; j < layer_magnitudes.size(); ++j)
    if (!(layer_magnitudes[j] < r.pow(static_cast<int>(j) + 1))) return false;
  return true;
}

bool gauge_inside(const Point& p, const Rational& r) { return gauge_of(p).inside(r); }

}  // namespace carnot
