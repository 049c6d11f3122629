#ifndef CHARCLASS_PROBLEM_HPP
#define CHARCLASS_PROBLEM_HPP

// Problem files:
//
//   # comment
//   vars x, y, z;
//   affine;            (optional: generators need not be homogeneous)
//   homvar h;          (optional: name of the homogenizing variable)
//   gens: x^2 + y^2 - z^2, x*y;
//
// Operators + - * ^, parentheses and integer literals. Multiplication must
// be written explicitly.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charclass/polynomial.hpp"

namespace charclass {

struct ProblemFile {
  RingPtr<BigInt> ring;
  std::vector<Polynomial<BigInt>> generators;
  bool affine = false;
  std::optional<std::string> homogenizing_variable;

  const std::vector<std::string>& variables() const { return ring->names(); }
};

/// Throws ParseError carrying line and column. `affine` behaves like an
/// 'affine;' line in the text.
ProblemFile parse_problem(std::string_view text, bool affine = false);

/// Canonical text form; parse_problem(serialize(p)) reproduces p.
std::string serialize(const ProblemFile& problem);

/// Parses one expression over the variables of `ring`.
Polynomial<BigInt> parse_polynomial(std::string_view expr, const RingPtr<BigInt>& ring);

/// Maps integer coefficients into another scalar type (reduction mod p,
/// inclusion into Q or C).
template <class K>
Polynomial<K> to_field(const Polynomial<BigInt>& f, const RingPtr<K>& target) {
  const auto& field = target->field();
  return map_coefficients(f, target, [&](const BigInt& c) { return field.from_integer(c); });
}

/// Convenience for tests and tools: parse `expr` directly into `ring`.
template <class K>
Polynomial<K> parse_in(const RingPtr<K>& ring, std::string_view expr) {
  auto zring = make_ring<BigInt>(ring->names(), Field<BigInt>{});
  return to_field(parse_polynomial(expr, zring), ring);
}

}  // namespace charclass

#endif  // CHARCLASS_PROBLEM_HPP
