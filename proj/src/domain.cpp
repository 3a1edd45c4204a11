#include "k3disc/domain.hpp"

#include <cctype>

namespace k3disc {
namespace {

std::string strip(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

mpz_class parse_integer(const std::string& s) {
  if (s.empty()) throw ParseError("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw ParseError("sign without digits: '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw ParseError("bad integer literal: '" + s + "'");
  }
  mpz_class v;
  v.set_str(s[0] == '+' ? s.substr(1) : s, 10);
  return v;
}

mpq_class parse_rational_literal(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return mpq_class(parse_integer(s));
  mpz_class num = parse_integer(s.substr(0, slash));
  mpz_class den = parse_integer(s.substr(slash + 1));
  if (sgn(den) == 0) throw ParseError("zero denominator: '" + s + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

IntegerRing::Element IntegerRing::parse(std::string_view text) const {
  std::string s = strip(text);
  if (s.find('/') != std::string::npos) throw ParseError("rational literal in integer ring: '" + s + "'");
  return parse_integer(s);
}

RationalField::Element RationalField::parse(std::string_view text) const {
  return parse_rational_literal(strip(text));
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 2 || p >= (1ULL << 63) || !is_prime_u64(p)) {
    throw UsageError("prime field modulus must be a prime below 2^63, got " + std::to_string(p));
  }
}

PrimeField::Element PrimeField::from_mpz(const mpz_class& v) const {
  return mpz_fdiv_ui(v.get_mpz_t(), p_);
}

mpz_class PrimeField::lift_symmetric(Element a) const {
  mpz_class v(static_cast<unsigned long>(a));
  if (a > p_ / 2) v -= mpz_class(static_cast<unsigned long>(p_));
  return v;
}

PrimeField::Element PrimeField::parse(std::string_view text) const {
  return reduce_rational(*this, parse_rational_literal(strip(text)));
}

PrimeField::Element reduce_rational(const PrimeField& field, const mpq_class& q) {
  auto den = field.from_mpz(q.get_den());
  if (den == 0) throw UndefinedError("denominator vanishes modulo " + std::to_string(field.prime()));
  return field.mul(field.from_mpz(q.get_num()), field.inv(den));
}

}  // namespace k3disc
