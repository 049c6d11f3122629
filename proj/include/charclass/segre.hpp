#ifndef CHARCLASS_SEGRE_HPP
#define CHARCLASS_SEGRE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charclass/error.hpp"
#include "charclass/ideal.hpp"

namespace charclass {

/// deg(R_d) for d = n-k, ..., n, where R_d is the residual of X in the
/// intersection of d random degree-m hypersurfaces containing X.
struct ResidualDegrees {
  int n = 0;
  int k = 0;
  int m = 0;
  std::vector<std::int64_t> degrees;  // degrees[i] is deg(R_{n-k+i})

  int first_level() const { return n - k; }
  std::int64_t at(int d) const { return degrees.at(d - first_level()); }
  friend bool operator==(const ResidualDegrees&, const ResidualDegrees&) = default;
};

/// deg s_0(X, P^n), ..., deg s_k(X, P^n).
struct SegreDegrees {
  int n = 0;
  int k = 0;
  std::vector<std::int64_t> values;
  friend bool operator==(const SegreDegrees&, const SegreDegrees&) = default;
};

std::int64_t binomial(int n, int k);
std::int64_t ipow(std::int64_t base, int e);

/// Unit triangular solve:
///   deg s_p = m^d - deg R_d - sum_{i<p} C(d, p-i) m^(p-i) deg s_i,  d = n-k+p.
SegreDegrees segre_from_residuals(const ResidualDegrees& residuals);

/// The same relation read forwards: residual degrees implied by Segre degrees.
ResidualDegrees residuals_from_segre(const SegreDegrees& segre, int m);

namespace detail {

/// Random linear map P^d -> P^n as images of x_0..x_n in a fresh ring of d+1
/// variables.
template <class K>
std::vector<Polynomial<K>> random_linear_embedding(const RingPtr<K>& ring, int d, Rng& rng) {
  std::vector<std::string> names;
  for (int j = 0; j <= d; ++j) names.push_back("z" + std::to_string(j));
  auto small = make_ring<K>(std::move(names), ring->field());
  std::vector<Polynomial<K>> images;
  for (int i = 0; i < ring->nvars(); ++i) images.push_back(random_form(small, 1, rng));
  return images;
}

}  // namespace detail

/// Draws d random degree-m elements of I per level, saturates by I and reads
/// off the degree of the residual. m = 0 selects the largest generator degree.
///
/// The residual at level d has dimension n-d, so both ideals are first pulled
/// back along a random linear P^d -> P^n; a generic section keeps the degree
/// and leaves a zero-dimensional saturation problem.
template <class K>
ResidualDegrees residual_degrees_symbolic(const Ideal<K>& I, Rng& rng, int m = 0, int retries = 3) {
  const int n = I.ring()->ambient_dim();
  ResidualDegrees out;
  out.n = n;
  if (I.is_zero_ideal()) {
    // X = P^n: every residual is empty
    out.k = n;
    out.m = 0;
    out.degrees.assign(n + 1, 0);
    return out;
  }
  auto stats = I.stats();
  if (stats.empty()) throw DomainError("residual degrees: the scheme is empty");
  out.k = stats.dim;
  out.m = m > 0 ? m : I.max_degree();
  if (out.m < I.max_degree()) throw std::invalid_argument("residual degrees: degree bound below a generator degree");

  for (int d = n - out.k; d <= n; ++d) {
    bool done = false;
    for (int attempt = 0; attempt < retries && !done; ++attempt) {
      std::vector<Polynomial<K>> f;
      for (int i = 0; i < d; ++i) f.push_back(random_element_of_degree(I, out.m, rng));
      std::optional<Ideal<K>> J, base;
      if (d < n) {
        auto images = detail::random_linear_embedding(I.ring(), d, rng);
        std::vector<Polynomial<K>> fs, is;
        for (const auto& g : f) fs.push_back(compose(g, images));
        for (const auto& g : I.generators()) is.push_back(compose(g, images));
        J.emplace(images.front().ring(), std::move(fs));
        base.emplace(images.front().ring(), std::move(is));
      } else {
        J.emplace(I.ring(), std::move(f));
        base.emplace(I);
      }
      auto residual = saturation(*J, *base);
      if (residual.is_unit()) {
        out.degrees.push_back(0);
        done = true;
        continue;
      }
      // the residual is pure of codimension d, so its section is finite
      auto rs = residual.stats();
      if (rs.dim == J->ring()->ambient_dim() - d) {
        out.degrees.push_back(rs.degree);
        done = true;
      }
    }
    if (!done)
      throw GenericityError("residual degrees: level " + std::to_string(d) + " failed the codimension check after " +
                            std::to_string(retries) + " draws");
  }
  if (ipow(out.m, out.first_level()) - out.degrees.front() < 1)
    throw GenericityError("residual degrees: first level exceeds the Bezout bound");
  return out;
}

}  // namespace charclass

#endif  // CHARCLASS_SEGRE_HPP
