#include "charclass/segre.hpp"

#include <stdexcept>

namespace charclass {

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t ipow(std::int64_t base, int e) {
  if (e < 0) throw std::invalid_argument("ipow: negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

SegreDegrees segre_from_residuals(const ResidualDegrees& R) {
  if (static_cast<int>(R.degrees.size()) != R.k + 1)
    throw std::invalid_argument("segre_from_residuals: expected k + 1 residual degrees");
  SegreDegrees s{R.n, R.k, {}};
  for (int p = 0; p <= R.k; ++p) {
    int d = R.n - R.k + p;
    std::int64_t v = ipow(R.m, d) - R.at(d);
    for (int i = 0; i < p; ++i) v -= binomial(d, p - i) * ipow(R.m, p - i) * s.values[i];
    s.values.push_back(v);
  }
  return s;
}

ResidualDegrees residuals_from_segre(const SegreDegrees& s, int m) {
  ResidualDegrees R{s.n, s.k, m, {}};
  for (int p = 0; p <= s.k; ++p) {
    int d = s.n - s.k + p;
    std::int64_t v = ipow(m, d);
    for (int i = 0; i <= p; ++i) v -= binomial(d, p - i) * ipow(m, p - i) * s.values[i];
    R.degrees.push_back(v);
  }
  return R;
}

}  // namespace charclass
