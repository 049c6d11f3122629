#ifndef CHARCLASS_SCALAR_HPP
#define CHARCLASS_SCALAR_HPP

// Coefficient types: prime field elements, rationals, integers (parser output)
// and complex doubles (numeric backend). Every algorithm is templated on the
// scalar; a Field<K> value carries the runtime context (the modulus for Fp).

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace charclass {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;
using Rng = std::mt19937_64;

/// Element of Z/pZ for a prime p < 2^31. The modulus travels with the value.
struct Fp {
  std::uint32_t v = 0;
  std::uint32_t p = 0;

  friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v; }
  friend Fp operator+(Fp a, Fp b) {
    std::uint32_t s = a.v + b.v;
    if (s >= a.p) s -= a.p;
    return {s, a.p};
  }
  friend Fp operator-(Fp a, Fp b) {
    return {a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p};
  }
  friend Fp operator-(Fp a) { return {a.v == 0 ? 0 : a.p - a.v, a.p}; }
  friend Fp operator*(Fp a, Fp b) {
    return {static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % a.p), a.p};
  }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }

  Fp inverse() const {
    if (v == 0) throw std::domain_error("Fp: inverse of zero");
    std::int64_t a = v, m = p, x0 = 1, x1 = 0;
    while (m != 0) {
      std::int64_t q = a / m;
      std::int64_t t = a - q * m;
      a = m;
      m = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    x0 %= static_cast<std::int64_t>(p);
    if (x0 < 0) x0 += p;
    return {static_cast<std::uint32_t>(x0), p};
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp& operator/=(Fp b) { return *this = *this / b; }
};

inline bool is_zero(const Fp& a) { return a.v == 0; }
inline bool is_zero(const Rational& a) { return a.is_zero(); }
inline bool is_zero(const BigInt& a) { return a.is_zero(); }
inline bool is_zero(const Complex& a) { return a == Complex{}; }

inline std::string to_string(const Fp& a) { return std::to_string(a.v); }
inline std::string to_string(const Rational& a) { return a.str(); }
inline std::string to_string(const BigInt& a) { return a.str(); }
inline std::string to_string(const Complex& a) {
  return "(" + std::to_string(a.real()) + "," + std::to_string(a.imag()) + ")";
}

bool is_prime(std::uint64_t n);

template <class K>
struct Field;

template <>
struct Field<Fp> {
  std::uint32_t p;

  explicit Field(std::uint32_t prime) : p(prime) {
    if (!is_prime(prime) || prime >= (1u << 31))
      throw std::invalid_argument("Field<Fp>: modulus must be a prime below 2^31");
  }
  Fp zero() const { return {0, p}; }
  Fp one() const { return {1, p}; }
  Fp from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return {static_cast<std::uint32_t>(r), p};
  }
  Fp from_integer(const BigInt& n) const {
    BigInt r = n % p;
    if (r < 0) r += p;
    return {r.convert_to<std::uint32_t>(), p};
  }
  /// Uniform over the field.
  Fp random(Rng& rng) const {
    return {static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint32_t>(0, p - 1)(rng)), p};
  }
  std::uint64_t characteristic() const { return p; }
  friend bool operator==(const Field& a, const Field& b) { return a.p == b.p; }
};

template <>
struct Field<Rational> {
  // Rationals have no uniform distribution; random coefficients are drawn
  // from a symmetric integer box.
  static constexpr int kRandomBound = 1000;

  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational from_int(std::int64_t n) const { return n; }
  Rational from_integer(const BigInt& n) const { return Rational(n); }
  Rational random(Rng& rng) const {
    return std::uniform_int_distribution<int>(-kRandomBound, kRandomBound)(rng);
  }
  std::uint64_t characteristic() const { return 0; }
  friend bool operator==(const Field&, const Field&) { return true; }
};

template <>
struct Field<BigInt> {
  BigInt zero() const { return 0; }
  BigInt one() const { return 1; }
  BigInt from_int(std::int64_t n) const { return n; }
  BigInt from_integer(const BigInt& n) const { return n; }
  std::uint64_t characteristic() const { return 0; }
  friend bool operator==(const Field&, const Field&) { return true; }
};

template <>
struct Field<Complex> {
  Complex zero() const { return {}; }
  Complex one() const { return {1.0, 0.0}; }
  Complex from_int(std::int64_t n) const { return {static_cast<double>(n), 0.0}; }
  Complex from_integer(const BigInt& n) const { return {n.convert_to<double>(), 0.0}; }
  /// Standard complex Gaussian.
  Complex random(Rng& rng) const {
    std::normal_distribution<double> g(0.0, 1.0);
    double re = g(rng);
    double im = g(rng);
    return {re, im};
  }
  std::uint64_t characteristic() const { return 0; }
  friend bool operator==(const Field&, const Field&) { return true; }
};

/// Nonzero random field element.
template <class K>
K random_nonzero(const Field<K>& field, Rng& rng) {
  for (;;) {
    K c = field.random(rng);
    if (!is_zero(c)) return c;
  }
}

/// Uniform prime in [lo, hi).
std::uint32_t random_prime(Rng& rng, std::uint32_t lo = (1u << 29) + 1,
                           std::uint32_t hi = 0x7fffffffu);

}  // namespace charclass

#endif  // CHARCLASS_SCALAR_HPP
