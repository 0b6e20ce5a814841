#include "carnot/rational.hpp"

#include <cctype>

#include "carnot/errors.hpp"

namespace carnot {

Rational::Rational(long num, long den) {
  if (den == 0) throw Error("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw ParseError("Rational: empty string");
  const auto slash = s.find('/');
  const std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto check_int = [&](const std::string& part) {
    if (part.empty()) throw ParseError("Rational: malformed '" + s + "'");
    size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) throw ParseError("Rational: malformed '" + s + "'");
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw ParseError("Rational: malformed '" + s + "'");
  };
  check_int(num);
  check_int(den);
  const mpz_class den_z(den);
  if (den_z == 0) throw ParseError("Rational: zero denominator in '" + s + "'");
  mpq_class v{mpz_class(num), den_z};
  v.canonicalize();
  return Rational(std::move(v));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::pow(int e) const {
  if (e == 0) return Rational(1);
  if (is_zero() && e < 0) throw Error("Rational: negative power of zero");
  Rational base = e > 0 ? *this : Rational(1) / *this;
  Rational acc(1);
  for (int i = 0, n = e > 0 ? e : -e; i < n; ++i) acc *= base;
  return acc;
}

std::string Rational::str() const { return v_.get_str(); }

Rational Rational::operator-() const { return Rational(mpq_class(-v_)); }

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

}  // namespace carnot
