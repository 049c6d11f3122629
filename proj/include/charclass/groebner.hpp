#ifndef CHARCLASS_GROEBNER_HPP
#define CHARCLASS_GROEBNER_HPP

// Buchberger's algorithm with the Gebauer-Moeller pair update and the sugar
// selection strategy. Works over any field scalar (Fp, Rational).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "charclass/polynomial.hpp"

namespace charclass {

namespace detail {

/// Geometric bucket accumulator for long reductions.
template <class K>
class Geobucket {
 public:
  explicit Geobucket(const RingPtr<K>& ring) : ring_(ring) {}

  void add(const K& c, const Monomial& m, const Polynomial<K>& g) {
    add(Polynomial<K>(ring_).add_scaled(c, m, g));
  }

  void add(Polynomial<K> p) {
    if (p.is_zero()) return;
    std::size_t level = level_for(p.size());
    for (;;) {
      if (level >= buckets_.size()) buckets_.resize(level + 1, Polynomial<K>(ring_));
      if (buckets_[level].is_zero()) {
        buckets_[level] = std::move(p);
        return;
      }
      p = p + buckets_[level];
      buckets_[level] = Polynomial<K>(ring_);
      if (p.is_zero()) return;
      level = std::max(level + 1, level_for(p.size()));
    }
  }

  /// Removes and returns the leading term; nullopt when empty.
  std::optional<typename Polynomial<K>::Term> pop_leading() {
    const auto& ord = ring_->order();
    for (;;) {
      int best = -1;
      for (std::size_t i = 0; i < buckets_.size(); ++i) {
        if (buckets_[i].is_zero()) continue;
        if (best < 0 || ord.greater(buckets_[i].leading_monomial(), buckets_[best].leading_monomial()))
          best = static_cast<int>(i);
      }
      if (best < 0) return std::nullopt;
      Monomial lm = buckets_[best].leading_monomial();
      K c = ring_->field().zero();
      for (auto& b : buckets_) {
        if (!b.is_zero() && b.leading_monomial() == lm) {
          c = c + b.leading_coeff();
          drop_leading(b);
        }
      }
      if (!is_zero(c)) return typename Polynomial<K>::Term{lm, c};
    }
  }

 private:
  static std::size_t level_for(std::size_t n) {
    std::size_t level = 0, cap = 8;
    while (n > cap) {
      cap *= 4;
      ++level;
    }
    return level;
  }
  void drop_leading(Polynomial<K>& b) {
    std::vector<typename Polynomial<K>::Term> rest(b.terms().begin() + 1, b.terms().end());
    b = Polynomial<K>(ring_, std::move(rest));
  }

  RingPtr<K> ring_;
  std::vector<Polynomial<K>> buckets_;
};

template <class K>
struct Reducer {
  const std::vector<Polynomial<K>>* basis;
  std::vector<std::uint32_t> masks;
  std::vector<char> active;

  int find_divisor(const Monomial& m, int nvars) const {
    std::uint32_t mm = divmask(m, nvars);
    for (std::size_t i = 0; i < basis->size(); ++i) {
      if (!active[i]) continue;
      if (masks[i] & ~mm) continue;
      if (divides((*basis)[i].leading_monomial(), m, nvars)) return static_cast<int>(i);
    }
    return -1;
  }
};

/// Full reduction of f by monic basis elements; `skip` excludes one index.
template <class K>
Polynomial<K> reduce_full(const Polynomial<K>& f, const Reducer<K>& red, int skip = -1) {
  const auto& ring = f.ring();
  int n = ring->nvars();
  Geobucket<K> bucket(ring);
  bucket.add(f);
  std::vector<typename Polynomial<K>::Term> rem;
  while (auto lt = bucket.pop_leading()) {
    int idx = -1;
    {
      std::uint32_t mm = divmask(lt->mono, n);
      for (std::size_t i = 0; i < red.basis->size(); ++i) {
        if (!red.active[i] || static_cast<int>(i) == skip) continue;
        if (red.masks[i] & ~mm) continue;
        if (divides((*red.basis)[i].leading_monomial(), lt->mono, n)) {
          idx = static_cast<int>(i);
          break;
        }
      }
    }
    if (idx < 0) {
      rem.push_back(*lt);
      continue;
    }
    const auto& g = (*red.basis)[idx];
    Monomial q = quotient(lt->mono, g.leading_monomial());
    std::vector<typename Polynomial<K>::Term> tail(g.terms().begin() + 1, g.terms().end());
    if (!tail.empty()) bucket.add(-lt->coeff, q, Polynomial<K>(ring, std::move(tail)));
  }
  return Polynomial<K>(ring, std::move(rem));
}

}  // namespace detail

/// Remainder of f on division by `basis` (every term reduced).
template <class K>
Polynomial<K> normal_form(const Polynomial<K>& f, const std::vector<Polynomial<K>>& basis) {
  std::vector<Polynomial<K>> monic;
  monic.reserve(basis.size());
  for (const auto& g : basis)
    if (!g.is_zero()) monic.push_back(g.monic());
  detail::Reducer<K> red{&monic, {}, std::vector<char>(monic.size(), 1)};
  for (const auto& g : monic) red.masks.push_back(divmask(g.leading_monomial(), f.nvars()));
  return detail::reduce_full(f, red);
}

/// Counters exposed for tests and diagnostics.
struct GroebnerStats {
  std::size_t pairs_considered = 0;
  std::size_t zero_reductions = 0;
};

/// Reduced Groebner basis (monic, sorted by increasing leading monomial)
/// with respect to the order of the generators' ring.
template <class K>
std::vector<Polynomial<K>> groebner_basis(const std::vector<Polynomial<K>>& generators,
                                          GroebnerStats* stats = nullptr) {
  std::vector<Polynomial<K>> input;
  for (const auto& g : generators)
    if (!g.is_zero()) input.push_back(g.monic());
  if (input.empty()) return {};
  const auto ring = input.front().ring();
  const auto& ord = ring->order();
  const int n = ring->nvars();
  for (const auto& g : input) g.check_ring(input.front());

  std::vector<Polynomial<K>> basis;
  std::vector<std::uint32_t> sugar;
  detail::Reducer<K> red{&basis, {}, {}};

  struct Pair {
    int i, j;
    Monomial lcm;
    std::uint32_t sugar;
  };
  std::vector<Pair> pairs;

  auto poly_sugar = [&](const Polynomial<K>& f) {
    std::uint32_t s = 0;
    for (const auto& t : f.terms()) s = std::max(s, t.mono.wdeg);
    return s;
  };
  auto lcm_of = [&](const Monomial& a, const Monomial& b) { return lcm(a, b, n, ord.weights(), ord.elim()); };

  // Gebauer-Moeller update with new element h (index hi).
  auto update = [&](int hi) {
    const Monomial& lh = basis[hi].leading_monomial();
    std::vector<Pair> cand;
    for (int g = 0; g < hi; ++g) {
      if (!red.active[g]) continue;
      const Monomial& lg = basis[g].leading_monomial();
      Monomial l = lcm_of(lh, lg);
      std::uint32_t s = std::max(sugar[hi] + (l.wdeg - lh.wdeg), sugar[g] + (l.wdeg - lg.wdeg));
      cand.push_back({g, hi, l, s});
    }
    std::vector<Pair> kept;
    while (!cand.empty()) {
      Pair p = cand.back();
      cand.pop_back();
      bool keep = coprime(lh, basis[p.i].leading_monomial(), n);
      if (!keep) {
        auto divides_p = [&](const Pair& q) { return divides(q.lcm, p.lcm, n); };
        keep = std::none_of(cand.begin(), cand.end(), divides_p) && std::none_of(kept.begin(), kept.end(), divides_p);
      }
      if (keep) kept.push_back(p);
    }
    // Buchberger's coprime criterion on the survivors.
    std::erase_if(kept, [&](const Pair& p) { return coprime(lh, basis[p.i].leading_monomial(), n); });
    std::erase_if(pairs, [&](const Pair& p) {
      if (!divides(lh, p.lcm, n)) return false;
      Monomial a = lcm_of(basis[p.i].leading_monomial(), lh);
      Monomial b = lcm_of(basis[p.j].leading_monomial(), lh);
      return !(a == p.lcm) && !(b == p.lcm);
    });
    pairs.insert(pairs.end(), kept.begin(), kept.end());
    for (int g = 0; g < hi; ++g)
      if (red.active[g] && divides(lh, basis[g].leading_monomial(), n)) red.active[g] = 0;
  };

  auto insert = [&](Polynomial<K> h, std::uint32_t s) {
    basis.push_back(h.monic());
    sugar.push_back(s);
    red.masks.push_back(divmask(basis.back().leading_monomial(), n));
    red.active.push_back(1);
    update(static_cast<int>(basis.size()) - 1);
  };

  std::sort(input.begin(), input.end(),
            [&](const auto& a, const auto& b) { return ord.greater(b.leading_monomial(), a.leading_monomial()); });
  for (auto& g : input) {
    Polynomial<K> h = detail::reduce_full(g, red);
    if (!h.is_zero()) insert(std::move(h), poly_sugar(g));
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return ord.greater(b.lcm, a.lcm);
    });
    Pair p = *best;
    *best = pairs.back();
    pairs.pop_back();
    if (stats) ++stats->pairs_considered;

    const auto& f = basis[p.i];
    const auto& g = basis[p.j];
    Polynomial<K> s = Polynomial<K>(ring).add_scaled(ring->field().one(), quotient(p.lcm, f.leading_monomial()), f);
    s = s.add_scaled(-ring->field().one(), quotient(p.lcm, g.leading_monomial()), g);
    Polynomial<K> h = detail::reduce_full(s, red);
    if (h.is_zero()) {
      if (stats) ++stats->zero_reductions;
      continue;
    }
    insert(std::move(h), p.sugar);
  }

  // Interreduce the minimal basis.
  std::vector<Polynomial<K>> result;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!red.active[i]) continue;
    Polynomial<K> r = detail::reduce_full(basis[i], red, static_cast<int>(i));
    result.push_back(r.monic());
  }
  std::sort(result.begin(), result.end(),
            [&](const auto& a, const auto& b) { return ord.greater(b.leading_monomial(), a.leading_monomial()); });
  return result;
}

/// Exact quotient f / g; throws when g does not divide f.
template <class K>
Polynomial<K> divide_exact(const Polynomial<K>& f, const Polynomial<K>& g) {
  if (g.is_zero()) throw std::domain_error("divide_exact: division by zero");
  const auto& ring = f.ring();
  int n = ring->nvars();
  Polynomial<K> rest = f;
  std::vector<typename Polynomial<K>::Term> q;
  while (!rest.is_zero()) {
    if (!divides(g.leading_monomial(), rest.leading_monomial(), n))
      throw std::domain_error("divide_exact: not divisible");
    Monomial m = quotient(rest.leading_monomial(), g.leading_monomial());
    K c = rest.leading_coeff() / g.leading_coeff();
    q.push_back({m, c});
    rest = rest.add_scaled(-c, m, g);
  }
  return Polynomial<K>(ring, std::move(q));
}

}  // namespace charclass

#endif  // CHARCLASS_GROEBNER_HPP
