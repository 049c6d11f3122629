#ifndef CHARCLASS_TESTS_SUPPORT_HPP
#define CHARCLASS_TESTS_SUPPORT_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "charclass/ideal.hpp"
#include "charclass/problem.hpp"

namespace testing {

using namespace charclass;

inline constexpr std::uint32_t kPrime = 1073741789;  // largest prime below 2^30

inline RingPtr<Fp> fp_ring(std::vector<std::string> names, std::uint32_t p = kPrime) {
  return make_ring<Fp>(std::move(names), Field<Fp>(p));
}

template <class K>
Ideal<K> ideal_of(const RingPtr<K>& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial<K>> g;
  for (auto s : gens) g.push_back(parse_in(R, s));
  return Ideal<K>(R, std::move(g));
}

inline const char* const kTwistedCubic[] = {"x*z - y^2", "y*w - z^2", "x*w - y*z"};
inline const char* const kNodalCubic = "x^3 + x^2*z - y^2*z";
inline const char* const kCensoring = "2*p0*p1*p2 + p1^2*p2 + p1*p2^2 - p0^2*p12 + p1*p2*p12";

inline Ideal<Fp> twisted_cubic(std::uint32_t p = kPrime) {
  auto R = fp_ring({"x", "y", "z", "w"}, p);
  return ideal_of(R, {kTwistedCubic[0], kTwistedCubic[1], kTwistedCubic[2]});
}

}  // namespace testing

#endif  // CHARCLASS_TESTS_SUPPORT_HPP
