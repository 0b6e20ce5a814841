#include "carnot/poly.hpp"

#include <algorithm>
#include <cctype>

#include "carnot/errors.hpp"

namespace carnot {

Monomial::Monomial(VarId v, int e) {
  if (e < 0) throw Error("Monomial: negative exponent");
  if (e > 0) exps_.push_back({v, e});
}

Monomial Monomial::from_exponents(std::vector<std::pair<VarId, int>> exps) {
  Monomial m;
  std::sort(exps.begin(), exps.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [v, e] : exps) {
    if (e < 0) throw Error("Monomial: negative exponent");
    if (e == 0) continue;
    if (!m.exps_.empty() && m.exps_.back().first == v)
      m.exps_.back().second += e;
    else
      m.exps_.push_back({v, e});
  }
  return m;
}

int Monomial::weighted_degree() const {
  int d = 0;
  for (const auto& [v, e] : exps_) d += v.weight() * e;
  return d;
}

int Monomial::euclidean_degree() const {
  int d = 0;
  for (const auto& [v, e] : exps_) d += e;
  return d;
}

int Monomial::exponent(VarId v) const {
  for (const auto& [w, e] : exps_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial r;
  r.exps_.reserve(exps_.size() + o.exps_.size());
  size_t i = 0, j = 0;
  while (i < exps_.size() && j < o.exps_.size()) {
    if (exps_[i].first == o.exps_[j].first) {
      r.exps_.push_back({exps_[i].first, exps_[i].second + o.exps_[j].second});
      ++i, ++j;
    } else if (exps_[i].first < o.exps_[j].first) {
      r.exps_.push_back(exps_[i++]);
    } else {
      r.exps_.push_back(o.exps_[j++]);
    }
  }
  for (; i < exps_.size(); ++i) r.exps_.push_back(exps_[i]);
  for (; j < o.exps_.size(); ++j) r.exps_.push_back(o.exps_[j]);
  return r;
}

bool Monomial::operator<(const Monomial& o) const {
  const int wd = weighted_degree(), owd = o.weighted_degree();
  if (wd != owd) return wd < owd;
  return std::lexicographical_compare(
      exps_.begin(), exps_.end(), o.exps_.begin(), o.exps_.end(),
      [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
      });
}

std::string Monomial::str() const {
  if (exps_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : exps_) {
    if (!s.empty()) s += "*";
    s += v.str();
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial(), c);
}

Poly Poly::variable(VarId v) {
  Poly p;
  p.terms_.emplace(Monomial(v), Rational(1));
  return p;
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational Poly::constant_term() const {
  const auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<VarId> Poly::variables() const {
  std::set<VarId> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.exponents()) vs.insert(v);
  return vs;
}

int Poly::degree(Grading g) const {
  int d = -1;
  for (const auto& [m, c] : terms_)
    d = std::max(d, g == Grading::weighted ? m.weighted_degree() : m.euclidean_degree());
  return d;
}

int Poly::min_degree(Grading g) const {
  if (terms_.empty()) return -1;
  int d = -1;
  for (const auto& [m, c] : terms_) {
    const int md = g == Grading::weighted ? m.weighted_degree() : m.euclidean_degree();
    if (d < 0 || md < d) d = md;
  }
  return d;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r;
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw Error("Poly: negative power");
  Poly r(1);
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

Poly Poly::differentiated(VarId v) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    const int e = m.exponent(v);
    if (e == 0) continue;
    std::vector<std::pair<VarId, int>> exps = m.exponents();
    for (auto& [w, k] : exps)
      if (w == v) --k;
    r.add_term(Monomial::from_exponents(std::move(exps)), c * Rational(e));
  }
  return r;
}

Poly Poly::substituted(const std::map<VarId, Poly>& images) const {
  // Cache powers of each image as they are needed.
  std::map<VarId, std::vector<Poly>> powers;
  auto image_pow = [&](VarId v, int e) -> const Poly& {
    auto it = images.find(v);
    if (it == images.end())
      throw MissingComponent("substitute: no image for variable " + v.str());
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Poly(1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * it->second);
    return cache[static_cast<size_t>(e)];
  };
  Poly r;
  for (const auto& [m, c] : terms_) {
    Poly t(c);
    for (const auto& [v, e] : m.exponents()) t *= image_pow(v, e);
    r += t;
  }
  return r;
}

Rational Poly::evaluated(const std::map<VarId, Rational>& point) const {
  Rational r(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m.exponents()) {
      const auto it = point.find(v);
      if (it == point.end())
        throw MissingCoordinate("evaluate: no value for variable " + v.str());
      t *= it->second.pow(e);
    }
    r += t;
  }
  return r;
}

std::map<int, Poly> Poly::graded_components(Grading g) const {
  std::map<int, Poly> comps;
  for (const auto& [m, c] : terms_) {
    const int d = g == Grading::weighted ? m.weighted_degree() : m.euclidean_degree();
    comps[d].add_term(m, c);
  }
  return comps;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    const bool neg = c.sign() < 0;
    if (s.empty())
      s = neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    const Rational a = c.abs();
    if (m.is_unit())
      s += a.str();
    else if (a == Rational(1))
      s += m.str();
    else
      s += a.str() + "*" + m.str();
  }
  return s;
}

namespace {

// Recursive-descent parser for the canonical text form.
struct PolyParser {
  const std::string& text;
  size_t pos = 0;

  explicit PolyParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("Poly: " + what + " at position " + std::to_string(pos) + " in '" +
                     text + "'");
  }

  long parse_int() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stol(text.substr(start, pos - start));
  }

  std::string parse_uint_str() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return text.substr(start, pos - start);
  }

  VarId parse_var() {
    skip_ws();
    VarId v;
    if (text.compare(pos, 3, "lam") == 0) {
      pos += 3;
      v.layer = 0;
      v.index = 1;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        v.index = static_cast<int>(parse_int());
    } else if (text[pos] == 'z') {
      ++pos;
      v.layer = 1;
      v.index = static_cast<int>(parse_int());
    } else if (text[pos] == 's') {
      ++pos;
      v.layer = static_cast<int>(parse_int());
      if (peek() != '_') fail("expected '_' in s-variable");
      ++pos;
      v.index = static_cast<int>(parse_int());
    } else {
      fail("expected variable");
    }
    while (pos < text.size() && text[pos] == '\'') {
      ++v.copy;
      ++pos;
    }
    return v;
  }

  // term := coeff ['*' factors] | factors
  Poly parse_term() {
    Rational coeff(1);
    Monomial mono;
    bool saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::string num = parse_uint_str();
      std::string den = "1";
      if (peek() == '/') {
        ++pos;
        den = parse_uint_str();
      }
      coeff = Rational::parse(num + "/" + den);
      saw_coeff = true;
    }
    bool expect_factor = !saw_coeff;
    while (true) {
      if (expect_factor || peek() == '*') {
        if (peek() == '*') ++pos;
        const VarId v = parse_var();
        int e = 1;
        if (peek() == '^') {
          ++pos;
          e = static_cast<int>(parse_int());
        }
        mono = mono.times(Monomial(v, e));
        expect_factor = false;
      } else {
        break;
      }
    }
    return Poly::monomial(mono, coeff);
  }

  Poly parse_poly() {
    Poly p;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos;
    } else if (peek() == '+') {
      ++pos;
    }
    while (true) {
      Poly t = parse_term();
      p += neg ? -t : t;
      if (eof()) break;
      const char c = peek();
      if (c == '+')
        neg = false;
      else if (c == '-')
        neg = true;
      else
        fail("expected '+' or '-'");
      ++pos;
    }
    return p;
  }
};

}  // namespace

Poly Poly::parse(const std::string& text) {
  PolyParser p(text);
  if (p.eof()) throw ParseError("Poly: empty input");
  return p.parse_poly();
}

}  // namespace carnot
