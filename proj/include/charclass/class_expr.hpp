#ifndef CHARCLASS_CLASS_EXPR_HPP
#define CHARCLASS_CLASS_EXPR_HPP

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace charclass {

using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Element c_0 + c_1 H + ... + c_n H^n of Z[H]/(H^(n+1)), the Chow ring of
/// P^n; pushforwards of classes on subschemes live here.
class ClassExpr {
 public:
  explicit ClassExpr(int n) : coeffs_(IntVector::Zero(n + 1)) {
    if (n < 0) throw std::invalid_argument("ClassExpr: negative ambient dimension");
  }
  ClassExpr(int n, std::initializer_list<std::int64_t> c) : ClassExpr(n) {
    if (static_cast<int>(c.size()) > n + 1) throw std::invalid_argument("ClassExpr: too many coefficients");
    int i = 0;
    for (auto v : c) coeffs_[i++] = v;
  }
  explicit ClassExpr(IntVector coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) throw std::invalid_argument("ClassExpr: empty coefficient vector");
  }

  static ClassExpr one(int n) { return ClassExpr(n, {1}); }
  static ClassExpr hyperplane(int n) {
    ClassExpr h(n);
    if (n >= 1) h.coeffs_[1] = 1;
    return h;
  }

  int n() const { return static_cast<int>(coeffs_.size()) - 1; }
  const IntVector& coeffs() const { return coeffs_; }
  std::int64_t operator[](int i) const { return coeffs_[i]; }
  std::int64_t& operator[](int i) { return coeffs_[i]; }

  ClassExpr& operator+=(const ClassExpr& b) {
    check(b);
    coeffs_ += b.coeffs_;
    return *this;
  }
  ClassExpr& operator-=(const ClassExpr& b) {
    check(b);
    coeffs_ -= b.coeffs_;
    return *this;
  }
  friend ClassExpr operator+(ClassExpr a, const ClassExpr& b) { return a += b; }
  friend ClassExpr operator-(ClassExpr a, const ClassExpr& b) { return a -= b; }
  friend ClassExpr operator-(ClassExpr a) {
    a.coeffs_ = -a.coeffs_;
    return a;
  }
  friend ClassExpr operator*(std::int64_t s, ClassExpr a) {
    a.coeffs_ *= s;
    return a;
  }
  /// Product truncated above H^n.
  friend ClassExpr operator*(const ClassExpr& a, const ClassExpr& b) {
    a.check(b);
    ClassExpr r(a.n());
    for (int i = 0; i <= a.n(); ++i)
      if (a.coeffs_[i] != 0)
        for (int j = 0; i + j <= a.n(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return r;
  }
  friend bool operator==(const ClassExpr& a, const ClassExpr& b) {
    return a.n() == b.n() && a.coeffs_ == b.coeffs_;
  }

  ClassExpr pow(int e) const {
    ClassExpr r = one(n());
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

 private:
  void check(const ClassExpr& b) const {
    if (n() != b.n()) throw std::invalid_argument("ClassExpr: ambient dimension mismatch");
  }

  IntVector coeffs_;
};

/// "3H + H^2" style rendering.
std::string to_string(const ClassExpr& c);

}  // namespace charclass

#endif  // CHARCLASS_CLASS_EXPR_HPP
