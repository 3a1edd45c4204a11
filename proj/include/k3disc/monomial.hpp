#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace k3disc {

/// Upper bound on the number of variables in one ring context.
inline constexpr std::size_t kMaxVars = 20;

/// Exponent vector with cached total degree. Unused slots stay zero, so
/// comparisons never need the ring's arity.
class Monomial {
 public:
  Monomial() = default;

  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t total_degree() const { return total_; }
  bool is_one() const { return total_ == 0; }

  void set(std::size_t i, std::uint32_t e) {
    total_ = total_ - exps_[i] + e;
    exps_[i] = e;
  }

  static Monomial variable(std::size_t i, std::uint32_t e = 1) {
    Monomial m;
    m.set(i, e);
    return m;
  }

  bool divides(const Monomial& other) const {
    if (total_ > other.total_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exps_[i] = a.exps_[i] + b.exps_[i];
    m.total_ = a.total_ + b.total_;
    return m;
  }

  /// a / b; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exps_[i] = a.exps_[i] - b.exps_[i];
    m.total_ = a.total_ - b.total_;
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  /// Graded reverse lexicographic order with x0 > x1 > ... : higher total
  /// degree wins; ties go to the smaller exponent in the last differing slot.
  friend int grevlex_compare(const Monomial& a, const Monomial& b) {
    if (a.total_ != b.total_) return a.total_ > b.total_ ? 1 : -1;
    for (std::size_t i = kMaxVars; i-- > 0;) {
      if (a.exps_[i] != b.exps_[i]) return a.exps_[i] < b.exps_[i] ? 1 : -1;
    }
    return 0;
  }

 private:
  std::array<std::uint32_t, kMaxVars> exps_{};
  std::uint32_t total_ = 0;
};

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) > 0; }
};

}  // namespace k3disc
