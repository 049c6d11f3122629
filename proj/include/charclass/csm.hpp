#ifndef CHARCLASS_CSM_HPP
#define CHARCLASS_CSM_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "charclass/backend.hpp"
#include "charclass/class_expr.hpp"
#include "charclass/gcd.hpp"

namespace charclass {

/// Input to the shadow formula: s̃_0 = 1, s̃_i = 0 below codimension n-k and
/// s̃_i = -deg s_{i-(n-k)}(Sing X) above. k = -1 encodes an empty singular
/// locus.
struct SegreProfile {
  int n = 0;
  int k = -1;
  int r = 0;
  std::vector<std::int64_t> stilde;

  void validate() const;
  friend bool operator==(const SegreProfile&, const SegreProfile&) = default;
};

SegreProfile smooth_profile(int n, int r);
SegreProfile profile_from_segre(const SegreDegrees& singular, int r);

/// g_j = sum_i C(j, i) r^(j-i) s̃_i
ClassExpr shadow_from_segre(const SegreProfile& sp);
/// s̃_i = sum_t C(i, t) (-r)^(i-t) g_t
SegreProfile segre_from_shadow(const ClassExpr& G, int r, int n, int k);

/// (1+H)^(n+1) - sum_j g_j (-H)^j (1+H)^(n-j)
ClassExpr csm_from_shadow(const ClassExpr& G);

/// Closed form for the degrees of a hypersurface, p = 0..n-1.
std::vector<std::int64_t> csm_degrees_from_segre(const SegreProfile& sp);

/// mH (1+H)^(n+1) / (1+mH), truncated.
ClassExpr smooth_hypersurface_csm(int n, int m);

/// c_SM(P^n) pushed forward: (1+H)^(n+1) truncated.
ClassExpr projective_space_csm(int n);

struct CsmResult {
  ClassExpr pushforward{0};
  int dim = 0;
  std::vector<std::int64_t> degrees;  // degrees[p] = coefficient of H^(n-dim+p)
  std::int64_t euler = 0;
};

CsmResult make_csm_result(ClassExpr pushforward, int dim);

struct MlDegreeResult {
  std::int64_t ml_degree = 0;
  std::int64_t chi_x = 0;
  std::int64_t chi_cut = 0;
  int dim = 0;
  std::vector<std::string> warnings;
};

/// Stable 64-bit seed derivation for summands, independent of evaluation
/// order.
std::uint64_t derive_seed(std::uint64_t base, const std::string& key);

template <class K>
CsmResult csm_hypersurface(const Polynomial<K>& f, const ComputeOptions& opts, Rng& rng) {
  if (f.is_zero() || f.is_constant() || !f.is_homogeneous())
    throw std::invalid_argument("csm_hypersurface: f must be homogeneous and nonconstant");
  const int n = f.ring()->ambient_dim();
  auto g = squarefree_part(f, rng);
  const int r = g.degree() - 1;

  SegreProfile sp;
  auto jac = jacobian_ideal(g);
  if (jac.is_unit() || jac.stats().empty()) {
    sp = smooth_profile(n, r);
  } else {
    sp = profile_from_segre(segre_degrees(jac, opts, rng), r);
  }
  auto result = make_csm_result(csm_from_shadow(shadow_from_segre(sp)), n - 1);
  if (result.degrees != csm_degrees_from_segre(sp))
    throw std::logic_error("csm_hypersurface: shadow route and closed form disagree");
  return result;
}

template <class K>
CsmResult csm_hypersurface(const Polynomial<K>& f, Rng& rng) {
  return csm_hypersurface(f, ComputeOptions{}, rng);
}

/// Memo of hypersurface pushforwards keyed by the rendered product, shared
/// between calls on related ideals.
class CsmCache {
 public:
  std::optional<ClassExpr> find(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void put(const std::string& key, const ClassExpr& v) {
    std::lock_guard lock(mu_);
    map_.emplace(key, v);
  }
  std::size_t size() const {
    std::lock_guard lock(mu_);
    return map_.size();
  }

 private:
  mutable std::mutex mu_;
  std::map<std::string, ClassExpr> map_;
};

/// Inclusion-exclusion over the nonempty subsets of the given generators:
///   c_SM(V(I)) = sum_S (-1)^(|S|+1) c_SM(V(prod_{i in S} h_i)).
/// Summands are seeded from `rng` and the product, so results do not depend
/// on scheduling or on what the cache already holds.
template <class K>
CsmResult csm_subscheme(const Ideal<K>& I, const ComputeOptions& opts, Rng& rng, CsmCache* cache = nullptr) {
  const int n = I.ring()->ambient_dim();
  if (I.is_zero_ideal()) return make_csm_result(projective_space_csm(n), n);
  if (I.is_unit() || I.stats().empty()) throw DomainError("csm: the ideal defines the empty scheme");
  const auto& gens = I.generators();
  const std::size_t s = gens.size();
  if (s > 20) throw ResourceError("csm: inclusion-exclusion over " + std::to_string(s) + " generators is too large");
  const int dim = I.stats().dim;
  const std::uint64_t base = rng();

  CsmCache local;
  CsmCache& memo = cache ? *cache : local;

  struct Summand {
    std::uint64_t mask;
    Polynomial<K> product;
    std::string key;
  };
  std::vector<Summand> todo;
  std::map<std::string, std::size_t> first_of;
  std::vector<std::pair<std::string, int>> terms;  // key, sign
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
    Polynomial<K> prod = Polynomial<K>::constant(I.ring(), I.ring()->field().one());
    int bits = 0;
    for (std::size_t i = 0; i < s; ++i)
      if (mask >> i & 1) {
        prod = prod * gens[i];
        ++bits;
      }
    prod = prod.monic();
    auto key = to_string(prod);
    terms.emplace_back(key, bits % 2 == 1 ? 1 : -1);
    if (!memo.find(key) && !first_of.count(key)) {
      first_of[key] = todo.size();
      todo.push_back({mask, std::move(prod), key});
    }
  }

  unsigned workers = opts.tracker.threads ? opts.tracker.threads : std::max(1u, std::thread::hardware_concurrency());
  // the numeric backend already fans out over paths
  if (opts.backend == Backend::numeric) workers = 1;
  std::vector<std::optional<ClassExpr>> done(todo.size());
  std::vector<std::exception_ptr> errors(todo.size());
  auto work = [&](std::size_t i) {
    try {
      Rng sub(derive_seed(base, todo[i].key));
      done[i] = csm_hypersurface(todo[i].product, opts, sub).pushforward;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (workers <= 1 || todo.size() <= 1) {
    for (std::size_t i = 0; i < todo.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, todo.size()); ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < todo.size();) work(i);
      });
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < todo.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    memo.put(todo[i].key, *done[i]);
  }

  ClassExpr acc(n);
  for (const auto& [key, sign] : terms) acc += sign * *memo.find(key);
  return make_csm_result(acc, dim);
}

template <class K>
std::int64_t euler_characteristic(const Ideal<K>& I, const ComputeOptions& opts, Rng& rng) {
  return csm_subscheme(I, opts, rng).euler;
}

struct AffineEuler {
  std::int64_t euler = 0;
  std::int64_t chi_closure = 0;
  std::int64_t chi_infinity = 0;
  int dim = 0;  // of the closure
};

/// χ of an affine variety as χ(closure) - χ(part at infinity). The
/// homogenizing variable `homvar` becomes x_0 of the projective ring.
template <class K>
AffineEuler affine_euler(const std::vector<Polynomial<K>>& generators, const RingPtr<K>& affine_ring,
                         const ComputeOptions& opts, Rng& rng, const std::string& homvar = "x0") {
  std::vector<Polynomial<K>> nonzero;
  for (const auto& g : generators) {
    if (!(*g.ring() == *affine_ring)) throw std::invalid_argument("affine euler: ring mismatch");
    if (g.is_zero()) continue;
    if (g.is_constant()) throw DomainError("affine euler: the ideal defines the empty scheme");
    nonzero.push_back(g);
  }
  const int n = affine_ring->nvars();
  std::vector<std::string> names{homvar};
  for (const auto& v : affine_ring->names()) names.push_back(v);
  auto proj = make_ring<K>(names, affine_ring->field());
  std::vector<int> slot(n);
  for (int i = 0; i < n; ++i) slot[i] = i + 1;
  auto lift = [&](const Polynomial<K>& f) {
    auto e = embed(f, proj, std::span<const int>(slot));
    const int d = e.degree();
    Polynomial<K> acc(proj);
    for (const auto& t : e.terms()) {
      auto x = t.mono.exp;
      x[0] = static_cast<std::uint16_t>(d - static_cast<int>(t.mono.degree(n + 1)));
      acc += Polynomial<K>::monomial(proj, t.coeff, proj->order().make(x.data()));
    }
    return acc;
  };

  std::vector<Polynomial<K>> hom;
  for (const auto& g : nonzero) hom.push_back(lift(g));
  Ideal<K> closure(proj, hom);
  // the homogenized generators cut out the closure only if x_0 is a
  // nonzerodivisor; otherwise homogenize a degree-compatible basis
  if (!hom.empty() && !(saturation(closure, Polynomial<K>::variable(proj, 0)) == closure)) {
    auto grevlex = make_ring<K>(affine_ring->names(), affine_ring->field());
    std::vector<Polynomial<K>> affine_gens;
    for (const auto& g : nonzero) affine_gens.push_back(change_ring(g, grevlex));
    hom.clear();
    for (const auto& b : groebner_basis(affine_gens)) hom.push_back(lift(change_ring(b, affine_ring)));
    closure = Ideal<K>(proj, hom);
  }

  AffineEuler out;
  if (closure.is_unit() || closure.stats().empty()) throw DomainError("affine euler: the ideal defines the empty scheme");
  out.dim = closure.stats().dim;
  out.chi_closure = euler_characteristic(closure, opts, rng);
  out.euler = out.chi_closure;
  if (n == 0) return out;
  // the part at infinity lives in the hyperplane x_0 = 0 = P^(n-1)
  auto inf_ring = make_ring<K>(affine_ring->names(), affine_ring->field());
  std::vector<Polynomial<K>> images{Polynomial<K>(inf_ring)};
  for (int i = 0; i < n; ++i) images.push_back(Polynomial<K>::variable(inf_ring, i));
  std::vector<Polynomial<K>> at_inf;
  for (const auto& h : hom) at_inf.push_back(compose(h, images));
  Ideal<K> infinity(inf_ring, at_inf);
  out.chi_infinity = infinity.is_unit() || infinity.stats().empty() ? 0 : euler_characteristic(infinity, opts, rng);
  out.euler = out.chi_closure - out.chi_infinity;
  return out;
}

/// ML degree of the model X = V(I) in coordinates p_0..p_n as the signed
/// Euler characteristic of X minus the hyperplanes p_i = 0 and sum p_i = 0.
template <class K>
MlDegreeResult ml_degree(const Ideal<K>& I, const ComputeOptions& opts, Rng& rng) {
  const auto& ring = I.ring();
  if (I.is_unit() || I.stats().empty()) throw DomainError("ml degree: the ideal defines the empty scheme");
  Polynomial<K> g = Polynomial<K>::constant(ring, ring->field().one());
  Polynomial<K> sum(ring);
  for (int i = 0; i < ring->nvars(); ++i) {
    g = g * Polynomial<K>::variable(ring, i);
    sum += Polynomial<K>::variable(ring, i);
  }
  g = g * sum;

  MlDegreeResult out;
  out.dim = I.stats().dim;
  // one seed for both runs so shared summands agree with the cache
  CsmCache cache;
  const std::uint64_t seed = rng();
  Rng r1(seed), r2(seed);
  out.chi_x = csm_subscheme(I, opts, r1, &cache).euler;
  auto cut = I.with({g});
  out.chi_cut = cut.is_unit() || cut.stats().empty() ? 0 : csm_subscheme(cut, opts, r2, &cache).euler;
  std::int64_t chi_u = out.chi_x - out.chi_cut;
  out.ml_degree = (out.dim % 2 == 0 ? 1 : -1) * chi_u;
  if (chi_u == 0) {
    out.ml_degree = 0;
    out.warnings.push_back("the open set U is empty or has zero Euler characteristic; ML degree reported as 0");
  }
  return out;
}

}  // namespace charclass

#endif  // CHARCLASS_CSM_HPP
