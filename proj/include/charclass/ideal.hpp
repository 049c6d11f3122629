#ifndef CHARCLASS_IDEAL_HPP
#define CHARCLASS_IDEAL_HPP

#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "charclass/error.hpp"
#include "charclass/groebner.hpp"
#include "charclass/hilbert.hpp"
#include "charclass/polynomial.hpp"

namespace charclass {

/// Homogeneous ideal of K[x_0..x_n]. An empty generator list is the zero
/// ideal (all of P^n). The Groebner basis and scheme statistics are computed
/// lazily and cached; a populated Ideal is safe to share read-only.
template <class K>
class Ideal {
 public:
  Ideal(RingPtr<K> ring, std::vector<Polynomial<K>> generators) : ring_(std::move(ring)) {
    for (auto& g : generators) {
      if (g.ring() != ring_ && !(*g.ring() == *ring_)) throw std::invalid_argument("Ideal: generator ring mismatch");
      if (g.is_zero()) continue;
      if (!g.is_homogeneous()) throw std::invalid_argument("Ideal: inhomogeneous generator " + to_string(g));
      generators_.push_back(std::move(g));
    }
    cache_ = std::make_shared<Cache>();
  }

  const RingPtr<K>& ring() const { return ring_; }
  const std::vector<Polynomial<K>>& generators() const { return generators_; }
  bool is_zero_ideal() const { return generators_.empty(); }

  int max_degree() const {
    int d = 0;
    for (const auto& g : generators_) d = std::max(d, g.degree());
    return d;
  }

  const std::vector<Polynomial<K>>& groebner() const {
    if (!cache_->basis) cache_->basis = groebner_basis(generators_);
    return *cache_->basis;
  }

  bool is_unit() const {
    const auto& gb = groebner();
    return gb.size() == 1 && gb.front().is_constant();
  }

  bool contains(const Polynomial<K>& f) const { return normal_form(f, groebner()).is_zero(); }

  /// Same ideal: equal reduced Groebner bases.
  friend bool operator==(const Ideal& a, const Ideal& b) { return a.groebner() == b.groebner(); }

  Ideal with(const std::vector<Polynomial<K>>& more) const {
    auto gens = generators_;
    gens.insert(gens.end(), more.begin(), more.end());
    return Ideal(ring_, std::move(gens));
  }

  SchemeStats stats() const;

 private:
  struct Cache {
    std::optional<std::vector<Polynomial<K>>> basis;
    std::optional<SchemeStats> stats;
  };

  RingPtr<K> ring_;
  std::vector<Polynomial<K>> generators_;
  std::shared_ptr<Cache> cache_;
};

template <class K>
SchemeStats Ideal<K>::stats() const {
  if (cache_->stats) return *cache_->stats;
  SchemeStats s;
  if (is_zero_ideal()) {
    s = {ring_->ambient_dim(), 1};
  } else {
    std::vector<Exponents> lead;
    for (const auto& g : groebner()) lead.push_back(g.leading_monomial().exp);
    s = stats_from_numerator(hilbert_numerator(std::move(lead), ring_->nvars()), ring_->nvars());
  }
  cache_->stats = s;
  return s;
}

/// Projective dimension and degree of V(I) from the Hilbert series of the
/// leading-term ideal.
template <class K>
SchemeStats dimension_and_degree(const Ideal<K>& I) {
  return I.stats();
}

template <class K>
std::vector<Polynomial<K>> groebner_basis(const Ideal<K>& I) {
  return I.groebner();
}

namespace detail {

template <class K>
Ideal<K> unit_ideal(const RingPtr<K>& ring) {
  return Ideal<K>(ring, {Polynomial<K>::constant(ring, ring->field().one())});
}

/// Slots mapping ring variables into a scratch ring with one extra variable
/// at `extra_pos` (0 = front, nvars = back).
inline std::vector<int> slots_skipping(int nvars, int extra_pos) {
  std::vector<int> slot(nvars);
  for (int i = 0; i < nvars; ++i) slot[i] = i < extra_pos ? i : i + 1;
  return slot;
}

template <class K>
std::vector<std::string> names_with(const RingPtr<K>& ring, const std::string& extra, int pos) {
  auto names = ring->names();
  std::string fresh = extra;
  while (ring->index_of(fresh) >= 0) fresh += "'";
  names.insert(names.begin() + pos, fresh);
  return names;
}

}  // namespace detail

/// A ∩ B via a tag variable t: eliminate t from t·A + (1 - t)·B.
template <class K>
Ideal<K> intersect(const Ideal<K>& A, const Ideal<K>& B) {
  const auto& ring = A.ring();
  if (A.is_zero_ideal() || B.is_zero_ideal()) return Ideal<K>(ring, {});
  if (A.is_unit()) return B;
  if (B.is_unit()) return A;
  int n = ring->nvars();
  std::vector<std::uint32_t> weights(n + 1, 1);
  weights[0] = 0;  // t carries no degree; the ideal stays graded
  auto scratch = make_ring<K>(detail::names_with(ring, "t", 0), ring->field(), MonomialOrder(n + 1, 1, weights));
  auto slot = detail::slots_skipping(n, 0);
  auto t = Polynomial<K>::variable(scratch, 0);
  auto one_minus_t = Polynomial<K>::constant(scratch, scratch->field().one()) - t;
  std::vector<Polynomial<K>> gens;
  for (const auto& a : A.groebner()) gens.push_back(t * embed(a, scratch, std::span<const int>(slot)));
  for (const auto& b : B.groebner()) gens.push_back(one_minus_t * embed(b, scratch, std::span<const int>(slot)));
  std::vector<Polynomial<K>> out;
  std::vector<int> back(n + 1, 0);
  for (const auto& g : groebner_basis(gens)) {
    if (g.degree_in(0) > 0) continue;
    std::vector<typename Polynomial<K>::Term> terms;
    for (const auto& term : g.terms()) {
      std::array<std::uint16_t, kMaxVars> e{};
      for (int i = 0; i < n; ++i) e[i] = term.mono.exp[i + 1];
      terms.push_back({ring->order().make(e.data()), term.coeff});
    }
    out.emplace_back(ring, std::move(terms));
  }
  return Ideal<K>(ring, std::move(out));
}

/// J : (h) = (J ∩ (h)) / h.
template <class K>
Ideal<K> ideal_quotient(const Ideal<K>& J, const Polynomial<K>& h) {
  const auto& ring = J.ring();
  if (h.is_zero()) return detail::unit_ideal(ring);
  if (h.is_constant()) return J;
  auto meet = intersect(J, Ideal<K>(ring, {h}));
  std::vector<Polynomial<K>> gens;
  for (const auto& g : meet.generators()) gens.push_back(divide_exact(g, h));
  return Ideal<K>(ring, std::move(gens));
}

/// J : I = ∩_i (J : h_i).
template <class K>
Ideal<K> ideal_quotient(const Ideal<K>& J, const Ideal<K>& I) {
  if (I.is_zero_ideal()) return detail::unit_ideal(J.ring());
  std::optional<Ideal<K>> acc;
  for (const auto& h : I.generators()) {
    auto q = ideal_quotient(J, h);
    acc = acc ? intersect(*acc, q) : q;
  }
  return *acc;
}

/// J : h^∞. Uses a new variable y of weight deg h placed last in a weighted
/// reverse lexicographic order: the Groebner basis of J + (y - h) divided by
/// powers of y generates (J + (y - h)) : y^∞, and substituting y = h lands in
/// J : h^∞.
template <class K>
Ideal<K> saturation(const Ideal<K>& J, const Polynomial<K>& h) {
  const auto& ring = J.ring();
  if (h.is_zero()) return detail::unit_ideal(ring);
  if (h.is_constant() || J.is_zero_ideal()) return J;
  if (J.is_unit()) return J;
  int n = ring->nvars();
  int e = h.degree();
  std::vector<std::uint32_t> weights(n + 1, 1);
  weights[n] = static_cast<std::uint32_t>(e);
  auto scratch = make_ring<K>(detail::names_with(ring, "y", n), ring->field(), MonomialOrder(n + 1, 0, weights));
  auto slot = detail::slots_skipping(n, n);
  std::vector<Polynomial<K>> gens;
  for (const auto& g : J.groebner()) gens.push_back(embed(g, scratch, std::span<const int>(slot)));
  gens.push_back(Polynomial<K>::variable(scratch, n) - embed(h, scratch, std::span<const int>(slot)));

  // powers of h, built on demand
  std::vector<Polynomial<K>> hpow{Polynomial<K>::constant(ring, ring->field().one())};
  auto power = [&](int k) -> const Polynomial<K>& {
    while (static_cast<int>(hpow.size()) <= k) hpow.push_back(hpow.back() * h);
    return hpow[k];
  };

  std::vector<Polynomial<K>> out;
  for (const auto& g : groebner_basis(gens)) {
    int low = std::numeric_limits<int>::max();
    for (const auto& t : g.terms()) low = std::min(low, static_cast<int>(t.mono.exp[n]));
    // group by remaining y-exponent, substitute y = h
    Polynomial<K> acc(ring);
    std::vector<std::vector<typename Polynomial<K>::Term>> by_power;
    for (const auto& t : g.terms()) {
      int k = t.mono.exp[n] - low;
      if (static_cast<int>(by_power.size()) <= k) by_power.resize(k + 1);
      std::array<std::uint16_t, kMaxVars> ex{};
      for (int i = 0; i < n; ++i) ex[i] = t.mono.exp[i];
      by_power[k].push_back({ring->order().make(ex.data()), t.coeff});
    }
    for (std::size_t k = 0; k < by_power.size(); ++k) {
      if (by_power[k].empty()) continue;
      Polynomial<K> part(ring, std::move(by_power[k]));
      acc += k == 0 ? part : part * power(static_cast<int>(k));
    }
    if (!acc.is_zero()) out.push_back(std::move(acc));
  }
  return Ideal<K>(ring, std::move(out));
}

/// J : I^∞ = ∩_i (J : h_i^∞).
template <class K>
Ideal<K> saturation(const Ideal<K>& J, const Ideal<K>& I) {
  if (I.is_zero_ideal()) return detail::unit_ideal(J.ring());
  std::optional<Ideal<K>> acc;
  for (const auto& h : I.generators()) {
    auto s = saturation(J, h);
    if (s.is_unit()) continue;
    acc = acc ? intersect(*acc, s) : s;
  }
  return acc ? *acc : detail::unit_ideal(J.ring());
}

/// Saturation by iterating J ← J : I until the reduced basis stabilizes.
/// Slower than saturation(); kept as an independent route for tests.
template <class K>
Ideal<K> saturation_by_quotients(const Ideal<K>& J, const Ideal<K>& I) {
  Ideal<K> cur = J;
  for (;;) {
    Ideal<K> next = ideal_quotient(cur, I);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

/// Ideal of all partial derivatives of f.
template <class K>
Ideal<K> jacobian_ideal(const Polynomial<K>& f) {
  if (!f.is_homogeneous() || f.is_constant())
    throw std::invalid_argument("jacobian_ideal: f must be homogeneous and nonconstant");
  std::uint64_t p = f.ring()->field().characteristic();
  if (p != 0 && static_cast<std::uint64_t>(f.degree()) % p == 0)
    throw GenericityError("jacobian_ideal: field characteristic divides the degree; resample the field");
  std::vector<Polynomial<K>> gens;
  for (int i = 0; i < f.nvars(); ++i) gens.push_back(partial(f, i));
  return Ideal<K>(f.ring(), std::move(gens));
}

/// Σ λ_i h_i with λ_i dense random forms of degree m - deg h_i.
template <class K>
Polynomial<K> random_element_of_degree(const Ideal<K>& I, int m, Rng& rng) {
  const auto& ring = I.ring();
  if (m < I.max_degree()) throw std::invalid_argument("random_element_of_degree: m below a generator degree");
  Polynomial<K> acc(ring);
  for (const auto& h : I.generators()) acc += random_form(ring, m - h.degree(), rng) * h;
  return acc;
}

}  // namespace charclass

#endif  // CHARCLASS_IDEAL_HPP
