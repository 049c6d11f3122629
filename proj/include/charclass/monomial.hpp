#ifndef CHARCLASS_MONOMIAL_HPP
#define CHARCLASS_MONOMIAL_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace charclass {

inline constexpr int kMaxVars = 16;

/// Exponent vector with two cached additive gradings: the weighted degree
/// and the degree in the elimination block. Both are set by MonomialOrder.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t wdeg = 0;
  std::uint32_t edeg = 0;

  std::uint32_t degree(int nvars) const {
    std::uint32_t d = 0;
    for (int i = 0; i < nvars; ++i) d += exp[i];
    return d;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
  m.wdeg = a.wdeg + b.wdeg;
  m.edeg = a.edeg + b.edeg;
  return m;
}

inline bool divides(const Monomial& a, const Monomial& b, int nvars) {
  for (int i = 0; i < nvars; ++i)
    if (a.exp[i] > b.exp[i]) return false;
  return true;
}

/// b / a; requires divides(a, b).
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(b.exp[i] - a.exp[i]);
  m.wdeg = b.wdeg - a.wdeg;
  m.edeg = b.edeg - a.edeg;
  return m;
}

inline Monomial lcm(const Monomial& a, const Monomial& b, int nvars, const std::vector<std::uint32_t>& weights,
                    int elim) {
  Monomial m;
  for (int i = 0; i < nvars; ++i) {
    m.exp[i] = std::max(a.exp[i], b.exp[i]);
    m.wdeg += weights[i] * m.exp[i];
    if (i < elim) m.edeg += m.exp[i];
  }
  return m;
}

inline bool coprime(const Monomial& a, const Monomial& b, int nvars) {
  for (int i = 0; i < nvars; ++i)
    if (a.exp[i] != 0 && b.exp[i] != 0) return false;
  return true;
}

/// 32-bit support signature; a.mask & ~b.mask != 0 proves a does not divide b.
inline std::uint32_t divmask(const Monomial& m, int nvars) {
  std::uint32_t mask = 0;
  for (int i = 0; i < nvars; ++i) {
    if (m.exp[i] >= 1) mask |= 1u << (2 * i % 32);
    if (m.exp[i] >= 2) mask |= 1u << ((2 * i + 1) % 32);
  }
  return mask;
}

/// Block order: degree in the first `elim` variables, then weighted degree,
/// then reverse lexicographic with the last variable smallest. With elim = 0
/// and unit weights this is graded reverse lexicographic order.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(int nvars, int elim = 0, std::vector<std::uint32_t> weights = {})
      : nvars_(nvars), elim_(elim), weights_(std::move(weights)) {
    if (nvars < 1 || nvars > kMaxVars) throw std::invalid_argument("MonomialOrder: unsupported variable count");
    if (weights_.empty()) weights_.assign(nvars, 1);
    if (static_cast<int>(weights_.size()) != nvars || elim < 0 || elim > nvars)
      throw std::invalid_argument("MonomialOrder: bad weights or elimination block");
  }

  int nvars() const { return nvars_; }
  int elim() const { return elim_; }
  const std::vector<std::uint32_t>& weights() const { return weights_; }
  bool is_grevlex() const {
    return elim_ == 0 && std::all_of(weights_.begin(), weights_.end(), [](auto w) { return w == 1; });
  }

  Monomial make(const std::uint16_t* exps) const {
    Monomial m;
    for (int i = 0; i < nvars_; ++i) {
      m.exp[i] = exps[i];
      m.wdeg += weights_[i] * exps[i];
      if (i < elim_) m.edeg += exps[i];
    }
    return m;
  }
  Monomial make(const std::vector<int>& exps) const {
    std::array<std::uint16_t, kMaxVars> e{};
    for (int i = 0; i < nvars_; ++i) e[i] = static_cast<std::uint16_t>(exps.at(i));
    return make(e.data());
  }
  Monomial one() const { return Monomial{}; }
  Monomial variable(int i) const {
    std::array<std::uint16_t, kMaxVars> e{};
    e[i] = 1;
    return make(e.data());
  }
  /// Recomputes the cached gradings (used when moving between orders).
  Monomial rebase(const Monomial& m) const { return make(m.exp.data()); }

  /// Three-way comparison: positive when a > b.
  int compare(const Monomial& a, const Monomial& b) const {
    if (a.edeg != b.edeg) return a.edeg > b.edeg ? 1 : -1;
    if (a.wdeg != b.wdeg) return a.wdeg > b.wdeg ? 1 : -1;
    for (int i = nvars_ - 1; i >= 0; --i)
      if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
    return 0;
  }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.nvars_ == b.nvars_ && a.elim_ == b.elim_ && a.weights_ == b.weights_;
  }

 private:
  int nvars_ = 0;
  int elim_ = 0;
  std::vector<std::uint32_t> weights_;
};

}  // namespace charclass

#endif  // CHARCLASS_MONOMIAL_HPP
