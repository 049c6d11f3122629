#include "charclass/csm.hpp"

#include <sstream>

namespace charclass {

void SegreProfile::validate() const {
  if (n < 0) throw std::invalid_argument("SegreProfile: negative ambient dimension");
  if (k < -1 || k >= n) throw std::invalid_argument("SegreProfile: singular locus dimension out of range");
  if (static_cast<int>(stilde.size()) != n + 1) throw std::invalid_argument("SegreProfile: expected n + 1 entries");
  if (stilde[0] != 1) throw std::invalid_argument("SegreProfile: s~_0 must be 1");
  int first = k < 0 ? n + 1 : n - k;
  for (int i = 1; i < first; ++i)
    if (stilde[i] != 0) throw std::invalid_argument("SegreProfile: nonzero entry below the codimension of the locus");
}

SegreProfile smooth_profile(int n, int r) {
  SegreProfile sp{n, -1, r, std::vector<std::int64_t>(n + 1, 0)};
  sp.stilde[0] = 1;
  return sp;
}

SegreProfile profile_from_segre(const SegreDegrees& singular, int r) {
  const int n = singular.n, k = singular.k;
  if (static_cast<int>(singular.values.size()) != k + 1)
    throw std::invalid_argument("profile_from_segre: expected k + 1 Segre degrees");
  SegreProfile sp{n, k, r, std::vector<std::int64_t>(n + 1, 0)};
  sp.stilde[0] = 1;
  for (int i = n - k; i <= n; ++i) sp.stilde[i] -= singular.values[i - (n - k)];
  sp.validate();
  return sp;
}

ClassExpr shadow_from_segre(const SegreProfile& sp) {
  sp.validate();
  ClassExpr G(sp.n);
  for (int j = 0; j <= sp.n; ++j)
    for (int i = 0; i <= j; ++i) G[j] += binomial(j, i) * ipow(sp.r, j - i) * sp.stilde[i];
  return G;
}

SegreProfile segre_from_shadow(const ClassExpr& G, int r, int n, int k) {
  if (G.n() != n) throw std::invalid_argument("segre_from_shadow: ambient dimension mismatch");
  SegreProfile sp{n, k, r, std::vector<std::int64_t>(n + 1, 0)};
  for (int i = 0; i <= n; ++i)
    for (int t = 0; t <= i; ++t) sp.stilde[i] += binomial(i, t) * ipow(-r, i - t) * G[t];
  return sp;
}

ClassExpr projective_space_csm(int n) { return (ClassExpr::one(n) + ClassExpr::hyperplane(n)).pow(n + 1); }

ClassExpr csm_from_shadow(const ClassExpr& G) {
  const int n = G.n();
  const ClassExpr one = ClassExpr::one(n), H = ClassExpr::hyperplane(n);
  ClassExpr out = projective_space_csm(n);
  for (int j = 0; j <= n; ++j) {
    if (G[j] == 0) continue;
    out -= (G[j] * (-1 * H).pow(j)) * (one + H).pow(n - j);
  }
  return out;
}

std::vector<std::int64_t> csm_degrees_from_segre(const SegreProfile& sp) {
  sp.validate();
  const int n = sp.n, dim = n - 1;
  std::vector<std::int64_t> out;
  for (int p = 0; p <= dim; ++p) {
    int q = n - dim + p;
    std::int64_t v = binomial(n + 1, q);
    for (int i = 0; i <= q; ++i) {
      if (sp.stilde[i] == 0) continue;
      std::int64_t inner = 0;
      for (int j = i; j <= q; ++j)
        inner += (j % 2 == 0 ? 1 : -1) * binomial(j, i) * binomial(n - j, q - j) * ipow(sp.r, j - i);
      v -= sp.stilde[i] * inner;
    }
    out.push_back(v);
  }
  return out;
}

ClassExpr smooth_hypersurface_csm(int n, int m) {
  // 1/(1+mH) = sum (-m)^i H^i
  ClassExpr inv(n);
  for (int i = 0; i <= n; ++i) inv[i] = ipow(-m, i);
  return m * ClassExpr::hyperplane(n) * projective_space_csm(n) * inv;
}

CsmResult make_csm_result(ClassExpr pushforward, int dim) {
  const int n = pushforward.n();
  if (dim < 0 || dim > n) throw std::invalid_argument("make_csm_result: dimension out of range");
  CsmResult r;
  r.dim = dim;
  for (int p = 0; p <= dim; ++p) r.degrees.push_back(pushforward[n - dim + p]);
  r.euler = pushforward[n];
  r.pushforward = std::move(pushforward);
  return r;
}

std::uint64_t derive_seed(std::uint64_t base, const std::string& key) {
  // FNV-1a over the key, then a splitmix64 finalizer
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::uint64_t z = base ^ h;
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::string to_string(const ClassExpr& c) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= c.n(); ++i) {
    std::int64_t v = c[i];
    if (v == 0) continue;
    std::int64_t a = v < 0 ? -v : v;
    if (first)
      os << (v < 0 ? "-" : "");
    else
      os << (v < 0 ? " - " : " + ");
    first = false;
    if (i == 0 || a != 1) os << a;
    if (i >= 1) os << "H";
    if (i >= 2) os << "^" << i;
  }
  return first ? "0" : os.str();
}

}  // namespace charclass
