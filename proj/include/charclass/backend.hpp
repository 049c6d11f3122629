#ifndef CHARCLASS_BACKEND_HPP
#define CHARCLASS_BACKEND_HPP

#include <algorithm>
#include <string>

#include "charclass/homotopy.hpp"
#include "charclass/segre.hpp"

namespace charclass {

enum class Backend { symbolic, numeric };

inline const char* backend_name(Backend b) { return b == Backend::symbolic ? "symbolic" : "numeric"; }

struct ComputeOptions {
  Backend backend = Backend::symbolic;
  /// Element degree for the residual computation; raised to the largest
  /// generator degree of each ideal it is applied to. 0: that degree.
  int degree_bound = 0;
  int retries = 3;
  /// Recompute every randomized quantity with independent randomness and
  /// require identical results.
  bool verify = false;
  TrackerConfig tracker;
};

template <class K>
ResidualDegrees residual_degrees(const Ideal<K>& I, const ComputeOptions& opts, Rng& rng) {
  const int m = opts.degree_bound > 0 && !I.is_zero_ideal() ? std::max(opts.degree_bound, I.max_degree()) : 0;
  if (opts.backend == Backend::numeric && !I.is_zero_ideal()) {
    TrackerConfig cfg = opts.tracker;
    cfg.level_retries = std::max(cfg.level_retries, opts.retries);
    return residual_degrees_numeric(I, rng, cfg, m);
  }
  return residual_degrees_symbolic(I, rng, m, opts.retries);
}

template <class K>
SegreDegrees segre_degrees(const Ideal<K>& I, const ComputeOptions& opts, Rng& rng) {
  auto first = segre_from_residuals(residual_degrees(I, opts, rng));
  if (opts.verify) {
    Rng fresh(rng());
    auto second = segre_from_residuals(residual_degrees(I, opts, fresh));
    if (!(first == second))
      throw GenericityError("verification failed: Segre degrees differ between independent random draws");
  }
  return first;
}

}  // namespace charclass

#endif  // CHARCLASS_BACKEND_HPP
