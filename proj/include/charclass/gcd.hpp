#ifndef CHARCLASS_GCD_HPP
#define CHARCLASS_GCD_HPP

#include <vector>

#include "charclass/error.hpp"
#include "charclass/ideal.hpp"

namespace charclass {

/// Monic greatest common divisor. The lcm generates (f) ∩ (g); the gcd is
/// f·g / lcm.
template <class K>
Polynomial<K> gcd(const Polynomial<K>& f, const Polynomial<K>& g) {
  const auto& ring = f.ring();
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  if (f.is_constant() || g.is_constant()) return Polynomial<K>::constant(ring, ring->field().one());
  // the graded intersection needs homogeneous inputs; fall back to the
  // homogenization otherwise
  if (!f.is_homogeneous() || !g.is_homogeneous()) {
    auto ext = extend_ring(ring, "h_");
    auto d = gcd(homogenize(f, ext), homogenize(g, ext));
    return dehomogenize(d, ring->nvars(), ring).monic();
  }
  auto meet = intersect(Ideal<K>(ring, {f}), Ideal<K>(ring, {g}));
  if (meet.generators().size() != 1) throw std::logic_error("gcd: intersection of principal ideals is not principal");
  return divide_exact(f * g, meet.generators().front()).monic();
}

/// f with repeated factors removed: f / gcd(f, D_v f) for a random direction
/// v, verified by checking that the result divides f and is coprime to its
/// own generic directional derivative.
template <class K>
Polynomial<K> squarefree_part(const Polynomial<K>& f, Rng& rng, int retries = 5) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
  if (f.is_constant()) return f.monic();
  const auto& ring = f.ring();
  auto direction = [&] {
    std::vector<K> v;
    for (int i = 0; i < f.nvars(); ++i) v.push_back(ring->field().random(rng));
    return v;
  };
  for (int attempt = 0; attempt < retries; ++attempt) {
    auto v = direction();
    auto df = directional_derivative(f, std::span<const K>(v));
    if (df.is_zero()) continue;
    auto sf = divide_exact(f, gcd(f, df)).monic();
    try {
      divide_exact(f, sf);
    } catch (const std::domain_error&) {
      continue;
    }
    auto w = direction();
    auto dsf = directional_derivative(sf, std::span<const K>(w));
    if (sf.degree() > 0 && dsf.is_zero()) continue;
    if (sf.degree() > 0 && !gcd(sf, dsf).is_constant()) continue;
    return sf;
  }
  throw GenericityError("squarefree_part: verification failed after " + std::to_string(retries) + " random directions");
}

}  // namespace charclass

#endif  // CHARCLASS_GCD_HPP
