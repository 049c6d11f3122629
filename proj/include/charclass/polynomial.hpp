#ifndef CHARCLASS_POLYNOMIAL_HPP
#define CHARCLASS_POLYNOMIAL_HPP

#include <algorithm>
#include <memory>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "charclass/monomial.hpp"
#include "charclass/scalar.hpp"

namespace charclass {

/// Polynomial ring K[x_0..x_n] with a fixed monomial order (grevlex unless an
/// algorithm installs an elimination or weighted order on a scratch ring).
template <class K>
class Ring {
 public:
  Ring(std::vector<std::string> names, Field<K> field, MonomialOrder order)
      : names_(std::move(names)), field_(std::move(field)), order_(std::move(order)) {
    if (names_.empty()) throw std::invalid_argument("Ring: no variables");
    if (static_cast<int>(names_.size()) > kMaxVars) throw std::invalid_argument("Ring: too many variables");
    if (order_.nvars() != nvars()) throw std::invalid_argument("Ring: order does not match variable count");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw std::invalid_argument("Ring: duplicate variable '" + names_[i] + "'");
  }
  Ring(std::vector<std::string> names, Field<K> field)
      : Ring(names, std::move(field), MonomialOrder(static_cast<int>(names.size()))) {}

  int nvars() const { return static_cast<int>(names_.size()); }
  /// Projective dimension of the ambient space.
  int ambient_dim() const { return nvars() - 1; }
  const std::vector<std::string>& names() const { return names_; }
  const Field<K>& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }

  int index_of(const std::string& name) const {
    for (int i = 0; i < nvars(); ++i)
      if (names_[i] == name) return i;
    return -1;
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.names_ == b.names_ && a.field_ == b.field_ && a.order_ == b.order_;
  }

 private:
  std::vector<std::string> names_;
  Field<K> field_;
  MonomialOrder order_;
};

template <class K>
using RingPtr = std::shared_ptr<const Ring<K>>;

template <class K>
RingPtr<K> make_ring(std::vector<std::string> names, Field<K> field) {
  return std::make_shared<const Ring<K>>(std::move(names), std::move(field));
}

template <class K>
RingPtr<K> make_ring(std::vector<std::string> names, Field<K> field, MonomialOrder order) {
  return std::make_shared<const Ring<K>>(std::move(names), std::move(field), std::move(order));
}

/// Sparse polynomial: terms sorted strictly decreasing in the ring's order,
/// no zero coefficients.
template <class K>
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    K coeff;
  };

  explicit Polynomial(RingPtr<K> ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr<K> ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    normalize();
  }

  static Polynomial constant(RingPtr<K> ring, const K& c) {
    Polynomial f(ring);
    if (!charclass::is_zero(c)) f.terms_.push_back({ring->order().one(), c});
    return f;
  }
  static Polynomial variable(RingPtr<K> ring, int i) {
    if (i < 0 || i >= ring->nvars()) throw std::out_of_range("Polynomial::variable: index");
    Polynomial f(ring);
    f.terms_.push_back({ring->order().variable(i), ring->field().one()});
    return f;
  }
  static Polynomial monomial(RingPtr<K> ring, const K& c, const Monomial& m) {
    Polynomial f(ring);
    if (!charclass::is_zero(c)) f.terms_.push_back({ring->order().rebase(m), c});
    return f;
  }

  const RingPtr<K>& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree(nvars()) == 0); }
  int nvars() const { return ring_->nvars(); }

  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const K& leading_coeff() const { return terms_.front().coeff; }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree(nvars())));
    return d;
  }
  int degree_in(int var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.exp[var]));
    return d;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    auto d = terms_.front().mono.degree(nvars());
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono.degree(nvars()) == d; });
  }

  Polynomial& operator+=(const Polynomial& b) { return *this = add_scaled(ring_->field().one(), ring_->order().one(), b); }
  Polynomial& operator-=(const Polynomial& b) { return *this = add_scaled(-ring_->field().one(), ring_->order().one(), b); }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    return a.add_scaled(a.ring_->field().one(), a.ring_->order().one(), b);
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a.add_scaled(-a.ring_->field().one(), a.ring_->order().one(), b);
  }
  friend Polynomial operator-(const Polynomial& a) { return a * (-a.ring_->field().one()); }
  friend Polynomial operator*(const Polynomial& a, const K& c) {
    Polynomial r(a.ring_);
    if (charclass::is_zero(c)) return r;
    r.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) {
      K v = t.coeff * c;
      if (!charclass::is_zero(v)) r.terms_.push_back({t.mono, v});
    }
    return r;
  }
  friend Polynomial operator*(const K& c, const Polynomial& a) { return a * c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    const Polynomial& big = a.size() >= b.size() ? a : b;
    const Polynomial& small = a.size() >= b.size() ? b : a;
    Polynomial acc(a.ring_);
    for (const auto& t : small.terms_) acc = acc.add_scaled(t.coeff, t.mono, big);
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!(*a.ring_ == *b.ring_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
  }

  /// this + c * m * g, merged in one pass.
  Polynomial add_scaled(const K& c, const Monomial& m, const Polynomial& g) const {
    check_ring(g);
    const auto& ord = ring_->order();
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < g.terms_.size()) {
      Monomial gm = g.terms_[j].mono * m;
      int cmp = ord.compare(terms_[i].mono, gm);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        K v = g.terms_[j++].coeff * c;
        if (!charclass::is_zero(v)) r.terms_.push_back({gm, v});
      } else {
        K v = terms_[i].coeff + g.terms_[j].coeff * c;
        if (!charclass::is_zero(v)) r.terms_.push_back({gm, v});
        ++i;
        ++j;
      }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < g.terms_.size(); ++j) {
      K v = g.terms_[j].coeff * c;
      if (!charclass::is_zero(v)) r.terms_.push_back({g.terms_[j].mono * m, v});
    }
    return r;
  }

  /// Scales to leading coefficient one (fields only).
  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * (ring_->field().one() / leading_coeff());
  }

  void check_ring(const Polynomial& b) const {
    if (ring_ != b.ring_ && !(*ring_ == *b.ring_)) throw std::invalid_argument("Polynomial: ring mismatch");
  }

 private:
  void normalize() {
    const auto& ord = ring_->order();
    for (auto& t : terms_) t.mono = ord.rebase(t.mono);
    std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) { return ord.greater(a.mono, b.mono); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = out.back().coeff + t.coeff;
      } else {
        out.push_back(std::move(t));
      }
    }
    std::erase_if(out, [](const Term& t) { return charclass::is_zero(t.coeff); });
    terms_ = std::move(out);
  }

  RingPtr<K> ring_;
  std::vector<Term> terms_;
};

/// Formal partial derivative with respect to variable i.
template <class K>
Polynomial<K> partial(const Polynomial<K>& f, int i) {
  const auto& ring = f.ring();
  if (i < 0 || i >= ring->nvars()) throw std::out_of_range("partial: variable index");
  std::vector<typename Polynomial<K>::Term> terms;
  for (const auto& t : f.terms()) {
    auto e = t.mono.exp;
    if (e[i] == 0) continue;
    K c = t.coeff * ring->field().from_int(e[i]);
    --e[i];
    terms.push_back({ring->order().make(e.data()), c});
  }
  return Polynomial<K>(ring, std::move(terms));
}

/// Directional derivative sum_i v_i df/dx_i.
template <class K>
Polynomial<K> directional_derivative(const Polynomial<K>& f, std::span<const K> v) {
  Polynomial<K> acc(f.ring());
  for (int i = 0; i < f.nvars(); ++i) acc += partial(f, i) * v[i];
  return acc;
}

/// Moves f into a ring with the same variables (possibly a different order).
template <class K>
Polynomial<K> change_ring(const Polynomial<K>& f, const RingPtr<K>& target) {
  if (target->nvars() != f.nvars()) throw std::invalid_argument("change_ring: variable count mismatch");
  std::vector<typename Polynomial<K>::Term> terms(f.terms().begin(), f.terms().end());
  return Polynomial<K>(target, std::move(terms));
}

/// Embeds f into a ring whose variables are `target` with the source
/// variables placed at positions `slot[i]`.
template <class K>
Polynomial<K> embed(const Polynomial<K>& f, const RingPtr<K>& target, std::span<const int> slot) {
  std::vector<typename Polynomial<K>::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    std::array<std::uint16_t, kMaxVars> e{};
    for (int i = 0; i < f.nvars(); ++i) e[slot[i]] = t.mono.exp[i];
    terms.push_back({target->order().make(e.data()), t.coeff});
  }
  return Polynomial<K>(target, std::move(terms));
}

/// Maps coefficients through `fn` into a ring over another scalar type with
/// the same variables.
template <class K, class L, class Fn>
Polynomial<L> map_coefficients(const Polynomial<K>& f, const RingPtr<L>& target, Fn&& fn) {
  if (target->nvars() != f.nvars()) throw std::invalid_argument("map_coefficients: variable count mismatch");
  std::vector<typename Polynomial<L>::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({target->order().rebase(t.mono), fn(t.coeff)});
  return Polynomial<L>(target, std::move(terms));
}

template <class K>
RingPtr<K> extend_ring(const RingPtr<K>& ring, const std::string& name) {
  if (ring->index_of(name) >= 0) throw std::invalid_argument("extend_ring: variable '" + name + "' already exists");
  auto names = ring->names();
  names.push_back(name);
  return make_ring<K>(std::move(names), ring->field());
}

/// Homogenizes f with the last variable of `extended`, whose other variables
/// must be those of f's ring.
template <class K>
Polynomial<K> homogenize(const Polynomial<K>& f, const RingPtr<K>& extended) {
  if (extended->nvars() != f.nvars() + 1) throw std::invalid_argument("homogenize: target ring must add one variable");
  int d = f.degree();
  int h = f.nvars();
  std::vector<typename Polynomial<K>::Term> terms;
  for (const auto& t : f.terms()) {
    auto e = t.mono.exp;
    e[h] = static_cast<std::uint16_t>(d - static_cast<int>(t.mono.degree(f.nvars())));
    terms.push_back({extended->order().make(e.data()), t.coeff});
  }
  return Polynomial<K>(extended, std::move(terms));
}

template <class K>
Polynomial<K> homogenize(const Polynomial<K>& f, const std::string& new_var) {
  return homogenize(f, extend_ring(f.ring(), new_var));
}

/// Sets variable `var` to one and drops it; `target` lists the remaining
/// variables in order.
template <class K>
Polynomial<K> dehomogenize(const Polynomial<K>& f, int var, const RingPtr<K>& target) {
  if (target->nvars() != f.nvars() - 1) throw std::invalid_argument("dehomogenize: target ring must drop one variable");
  std::vector<typename Polynomial<K>::Term> terms;
  for (const auto& t : f.terms()) {
    std::array<std::uint16_t, kMaxVars> e{};
    for (int i = 0, j = 0; i < f.nvars(); ++i)
      if (i != var) e[j++] = t.mono.exp[i];
    terms.push_back({target->order().make(e.data()), t.coeff});
  }
  return Polynomial<K>(target, std::move(terms));
}

template <class K>
K evaluate(const Polynomial<K>& f, std::span<const K> point) {
  if (static_cast<int>(point.size()) != f.nvars()) throw std::invalid_argument("evaluate: point length mismatch");
  K acc = f.ring()->field().zero();
  for (const auto& t : f.terms()) {
    K v = t.coeff;
    for (int i = 0; i < f.nvars(); ++i)
      for (int k = 0; k < t.mono.exp[i]; ++k) v = v * point[i];
    acc = acc + v;
  }
  return acc;
}

/// f(images[0], ..., images[n-1]) in the ring of the images.
template <class K>
Polynomial<K> compose(const Polynomial<K>& f, const std::vector<Polynomial<K>>& images) {
  if (static_cast<int>(images.size()) != f.nvars()) throw std::invalid_argument("compose: image count mismatch");
  if (images.empty()) throw std::invalid_argument("compose: no images");
  const auto& target = images.front().ring();
  std::vector<std::vector<Polynomial<K>>> powers(images.size());
  auto power = [&](int i, int e) -> const Polynomial<K>& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(Polynomial<K>::constant(target, target->field().one()));
    while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * images[i]);
    return p[e];
  };
  Polynomial<K> acc(target);
  for (const auto& t : f.terms()) {
    Polynomial<K> v = Polynomial<K>::constant(target, t.coeff);
    for (int i = 0; i < f.nvars(); ++i)
      if (t.mono.exp[i] > 0) v = v * power(i, t.mono.exp[i]);
    acc += v;
  }
  return acc;
}

/// Dense random form of degree d with coefficients drawn from the field.
template <class K>
Polynomial<K> random_form(const RingPtr<K>& ring, int d, Rng& rng) {
  std::vector<typename Polynomial<K>::Term> terms;
  int n = ring->nvars();
  std::array<std::uint16_t, kMaxVars> e{};
  // enumerate exponent vectors of total degree d
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == n - 1) {
      e[var] = static_cast<std::uint16_t>(left);
      terms.push_back({ring->order().make(e.data()), ring->field().random(rng)});
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[var] = static_cast<std::uint16_t>(k);
      rec(var + 1, left - k);
    }
    e[var] = 0;
  };
  if (d >= 0) rec(0, d);
  return Polynomial<K>(ring, std::move(terms));
}

template <class K>
std::string to_string(const Polynomial<K>& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  const auto& names = f.ring()->names();
  bool first = true;
  for (const auto& t : f.terms()) {
    std::string c = to_string(t.coeff);
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    bool unit = t.mono.degree(f.nvars()) > 0 && c == "1";
    if (!unit) os << c;
    bool star = !unit;
    for (int i = 0; i < f.nvars(); ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (star) os << "*";
      os << names[i];
      if (t.mono.exp[i] > 1) os << "^" << t.mono.exp[i];
      star = true;
    }
  }
  return os.str();
}

}  // namespace charclass

#endif  // CHARCLASS_POLYNOMIAL_HPP
