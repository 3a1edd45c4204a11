#include "k3disc/kodaira.hpp"

#include <algorithm>

#include "k3disc/modular.hpp"

namespace k3disc {

namespace {

bool at_least(int v, int bound) { return v >= bound; }

}  // namespace

std::string KodairaType::name() const {
  switch (tag) {
    case KodairaTag::I0: return "I0";
    case KodairaTag::In: return "I" + std::to_string(n);
    case KodairaTag::II: return "II";
    case KodairaTag::III: return "III";
    case KodairaTag::IV: return "IV";
    case KodairaTag::I0star: return "I0*";
    case KodairaTag::Instar: return "I" + std::to_string(n) + "*";
    case KodairaTag::IVstar: return "IV*";
    case KodairaTag::IIIstar: return "III*";
    case KodairaTag::IIstar: return "II*";
    case KodairaTag::NonMinimal: return "NonMinimal";
  }
  return "?";
}

std::optional<int> KodairaType::euler() const {
  switch (tag) {
    case KodairaTag::I0: return 0;
    case KodairaTag::In: return n;
    case KodairaTag::II: return 2;
    case KodairaTag::III: return 3;
    case KodairaTag::IV: return 4;
    case KodairaTag::I0star: return 6;
    case KodairaTag::Instar: return 6 + n;
    case KodairaTag::IVstar: return 8;
    case KodairaTag::IIIstar: return 9;
    case KodairaTag::IIstar: return 10;
    case KodairaTag::NonMinimal: return std::nullopt;
  }
  return std::nullopt;
}

KodairaType KodairaType::parse(std::string_view text) {
  static const std::pair<const char*, KodairaTag> fixed[] = {
      {"I0", KodairaTag::I0},         {"II", KodairaTag::II},           {"III", KodairaTag::III},
      {"IV", KodairaTag::IV},         {"I0*", KodairaTag::I0star},      {"IV*", KodairaTag::IVstar},
      {"III*", KodairaTag::IIIstar},  {"II*", KodairaTag::IIstar},      {"NonMinimal", KodairaTag::NonMinimal}};
  for (auto [s, tag] : fixed) {
    if (text == s) return {tag, 0};
  }
  // In and In*
  if (text.size() >= 2 && text[0] == 'I') {
    bool star = text.back() == '*';
    std::string digits(text.substr(1, text.size() - 1 - (star ? 1 : 0)));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }) &&
        digits[0] != '0') {
      return {star ? KodairaTag::Instar : KodairaTag::In, std::stoi(digits)};
    }
  }
  throw ParseError("unknown Kodaira type '" + std::string(text) + "'");
}

std::vector<std::uint64_t> splitting_candidates(std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 29; out.size() < count; p += 14) {
    if (is_prime_u64(p)) out.push_back(p);
  }
  return out;
}

std::optional<std::uint64_t> find_splitting_prime(const FamilyPoint<RationalField>& pt, std::size_t candidates) {
  for (std::uint64_t p : splitting_candidates(candidates)) {
    PrimeField f(p);
    FamilyPoint<PrimeField> red(f);
    try {
      red = reduce_point(pt, f);
    } catch (const UndefinedError&) {
      continue;
    }
    auto h = build_h(weierstrass(red));
    if (h.degree() != kDegreeHInU) continue;
    if (roots_mod_p(h).size() == static_cast<std::size_t>(kDegreeHInU)) return p;
  }
  return std::nullopt;
}

std::string order_to_string(int order) { return order == kInfiniteOrder ? "inf" : std::to_string(order); }

KodairaType classify(const OrderTriple& o) {
  const int a = o.a, b = o.b, d = o.d;
  auto fail = [&]() -> KodairaType {
    throw InconsistentOrdersError("no Kodaira type has orders (" + order_to_string(a) + ", " + order_to_string(b) + ", " +
                                  order_to_string(d) + ")");
  };
  if (a < 0 || b < 0 || d < 0) fail();
  // Delta = 4 g2^3 + 27 g3^2 forces d >= min(3a, 2b), with equality when 3a != 2b
  const long long three_a = a == kInfiniteOrder ? kInfiniteOrder : 3LL * a;
  const long long two_b = b == kInfiniteOrder ? kInfiniteOrder : 2LL * b;
  const long long lower = std::min(three_a, two_b);
  if (d < lower) fail();
  if (three_a != two_b && d != lower) fail();

  if (at_least(a, 4) && at_least(b, 6)) return {KodairaTag::NonMinimal, 0};
  if (d == kInfiniteOrder) fail();  // a vanishing discriminant is not an elliptic fiber
  if (d == 0) return {KodairaTag::I0, 0};
  if (a == 0 && b == 0) return {KodairaTag::In, d};
  if (at_least(a, 1) && b == 1 && d == 2) return {KodairaTag::II, 0};
  if (a == 1 && at_least(b, 2) && d == 3) return {KodairaTag::III, 0};
  if (at_least(a, 2) && b == 2 && d == 4) return {KodairaTag::IV, 0};
  if (a == 2 && b == 3 && d > 6) return {KodairaTag::Instar, d - 6};
  if (at_least(a, 2) && at_least(b, 3) && d == 6) return {KodairaTag::I0star, 0};
  if (at_least(a, 3) && b == 4 && d == 8) return {KodairaTag::IVstar, 0};
  if (a == 3 && at_least(b, 5) && d == 9) return {KodairaTag::IIIstar, 0};
  if (at_least(a, 4) && b == 5 && d == 10) return {KodairaTag::IIstar, 0};
  return fail();
}

}  // namespace k3disc
