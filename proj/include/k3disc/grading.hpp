#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "k3disc/poly.hpp"

namespace k3disc {

/// Integer weights attached to variable names; unlisted variables weigh 0.
class WeightVector {
 public:
  WeightVector() = default;
  WeightVector(std::initializer_list<std::pair<const std::string, int>> init) : weights_(init) {}

  /// Parses `name:weight` comma lists, e.g. "x:6,y:14,z:21,w:1".
  static WeightVector parse(std::string_view text);

  void set(const std::string& name, int weight) { weights_[name] = weight; }
  int weight(const std::string& name) const {
    auto it = weights_.find(name);
    return it == weights_.end() ? 0 : it->second;
  }
  const std::map<std::string, int>& entries() const { return weights_; }
  std::string to_string() const;

 private:
  std::map<std::string, int> weights_;
};

/// (x:6, y:14, z:21, w:1); parameters carry weight 0 here.
WeightVector ambient_weights();
/// t_i : i for the eleven parameters, plus u:6 for the base coordinate x/w^6.
WeightVector parameter_weights();

struct WeightedDegree {
  std::int64_t degree;  // maximum over terms
  bool homogeneous;
};

template <class D>
std::vector<int> ring_weights(const MultiPoly<D>& p, const WeightVector& w) {
  std::vector<int> out;
  for (const auto& name : p.ring()->names()) out.push_back(w.weight(name));
  return out;
}

template <class D>
WeightedDegree weighted_degree(const MultiPoly<D>& p, const WeightVector& w) {
  if (p.is_zero()) throw DegreeUndefinedError("weighted degree of the zero polynomial");
  auto weights = ring_weights(p, w);
  bool first = true;
  WeightedDegree out{0, true};
  for (const auto& t : p.terms()) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) d += static_cast<std::int64_t>(weights[i]) * t.mono[i];
    if (first) {
      out.degree = d;
      first = false;
    } else {
      if (d != out.degree) out.homogeneous = false;
      out.degree = std::max(out.degree, d);
    }
  }
  return out;
}

/// Torus action v -> alpha^(direction * weight(v)) * v. Negative powers use
/// the companion symbol `<alpha>_inv`, and alpha * alpha_inv is cancelled, so
/// the result lives in the Laurent ring Z[alpha, alpha^-1][...].
template <class D>
MultiPoly<D> scale_action(const MultiPoly<D>& p, const WeightVector& w, int direction, const std::string& alpha = "alpha") {
  const auto& ring = p.ring();
  std::size_t a = ring->index_of(alpha);
  std::optional<std::size_t> a_inv = ring->find(alpha + "_inv");
  auto weights = ring_weights(p, w);
  weights[a] = 0;
  if (a_inv) weights[*a_inv] = 0;
  std::vector<typename MultiPoly<D>::Term> out;
  out.reserve(p.num_terms());
  for (const auto& t : p.terms()) {
    std::int64_t shift = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) shift += static_cast<std::int64_t>(weights[i]) * t.mono[i];
    shift *= direction;
    std::int64_t net = static_cast<std::int64_t>(t.mono[a]) + shift;
    if (a_inv) net -= t.mono[*a_inv];
    Monomial m = t.mono;
    if (net >= 0) {
      m.set(a, static_cast<std::uint32_t>(net));
      if (a_inv) m.set(*a_inv, 0);
    } else {
      if (!a_inv) throw ContextError("negative power of '" + alpha + "' needs the symbol '" + alpha + "_inv'");
      m.set(a, 0);
      m.set(*a_inv, static_cast<std::uint32_t>(-net));
    }
    out.push_back({m, t.coeff});
  }
  return MultiPoly<D>::from_terms(ring, std::move(out));
}

/// Black-box evaluation of a polynomial at a parameter point over F_p.
using FieldEvaluator = std::function<std::uint64_t(std::span<const std::uint64_t>)>;

struct ProbeResult {
  bool holds;
  int trials_used;    // nonzero samples compared
  int zero_retries;   // samples discarded because F(t) = 0
};

/// Checks F(alpha . t) = alpha^claimed * F(t) at `trials` random nonzero
/// samples, where (alpha . t)_i = alpha^weights[i] * t_i. Throws
/// InconclusiveError if every attempt lands on a zero of F.
ProbeResult numeric_degree_probe(const FieldEvaluator& f, std::span<const int> weights, std::int64_t claimed_degree, int trials,
                                 std::uint64_t prime, std::uint64_t seed);

}  // namespace k3disc
