#include "k3disc/grading.hpp"

#include <random>
#include <sstream>

#include "k3disc/modular.hpp"

namespace k3disc {

WeightVector WeightVector::parse(std::string_view text) {
  WeightVector w;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    std::string clean;
    for (char c : item) {
      if (!std::isspace(static_cast<unsigned char>(c))) clean.push_back(c);
    }
    if (clean.empty()) continue;
    auto colon = clean.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == clean.size()) {
      throw ParseError("weight entry must look like name:weight, got '" + item + "'");
    }
    try {
      std::size_t used = 0;
      int value = std::stoi(clean.substr(colon + 1), &used);
      if (used != clean.size() - colon - 1) throw std::invalid_argument("trailing");
      w.set(clean.substr(0, colon), value);
    } catch (const std::logic_error&) {
      throw ParseError("bad weight in '" + item + "'");
    }
  }
  return w;
}

std::string WeightVector::to_string() const {
  std::string out;
  for (const auto& [name, weight] : weights_) {
    if (!out.empty()) out += ",";
    out += name + ":" + std::to_string(weight);
  }
  return out;
}

WeightVector ambient_weights() { return {{"x", 6}, {"y", 14}, {"z", 21}, {"w", 1}}; }

WeightVector parameter_weights() {
  WeightVector w;
  for (int i : {4, 10, 12, 16, 18, 22, 24, 28, 30, 36, 42}) w.set("t" + std::to_string(i), i);
  w.set("u", 6);
  return w;
}

ProbeResult numeric_degree_probe(const FieldEvaluator& f, std::span<const int> weights, std::int64_t claimed_degree, int trials,
                                 std::uint64_t prime, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> element(1, prime - 1);
  ProbeResult result{true, 0, 0};
  const int max_attempts = 4 * trials + 8;
  std::vector<std::uint64_t> t(weights.size());
  std::vector<std::uint64_t> scaled(weights.size());
  for (int attempt = 0; attempt < max_attempts && result.trials_used < trials; ++attempt) {
    for (auto& x : t) x = element(rng);
    std::uint64_t alpha = element(rng);
    std::uint64_t base = f(t);
    if (base == 0) {
      ++result.zero_retries;
      continue;
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::int64_t w = weights[i];
      std::uint64_t factor = w >= 0 ? pow_mod(alpha, static_cast<std::uint64_t>(w), prime)
                                    : inv_mod(pow_mod(alpha, static_cast<std::uint64_t>(-w), prime), prime);
      scaled[i] = mul_mod(factor, t[i], prime);
    }
    std::uint64_t lhs = f(scaled);
    std::uint64_t factor = claimed_degree >= 0
                               ? pow_mod(alpha, static_cast<std::uint64_t>(claimed_degree), prime)
                               : inv_mod(pow_mod(alpha, static_cast<std::uint64_t>(-claimed_degree), prime), prime);
    std::uint64_t rhs = mul_mod(factor, base, prime);
    ++result.trials_used;
    if (lhs != rhs) result.holds = false;
  }
  if (result.trials_used == 0) throw InconclusiveError("every degree-probe sample was a zero of the evaluator");
  return result;
}

}  // namespace k3disc
