#ifndef CHARCLASS_HILBERT_HPP
#define CHARCLASS_HILBERT_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "charclass/monomial.hpp"

namespace charclass {

using Exponents = std::array<std::uint16_t, kMaxVars>;

/// Numerator N(t) of the Hilbert series N(t) / (1 - t)^nvars of S / M for a
/// monomial ideal M, coefficients in increasing powers of t.
std::vector<std::int64_t> hilbert_numerator(std::vector<Exponents> generators, int nvars);

/// Projective dimension (-1 when empty) and degree of the scheme cut out by
/// a homogeneous ideal, read off the Hilbert series numerator.
struct SchemeStats {
  int dim = -1;
  std::int64_t degree = 0;

  bool empty() const { return dim < 0; }
  friend bool operator==(const SchemeStats&, const SchemeStats&) = default;
};

SchemeStats stats_from_numerator(const std::vector<std::int64_t>& numerator, int nvars);

}  // namespace charclass

#endif  // CHARCLASS_HILBERT_HPP
