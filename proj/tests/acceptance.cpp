// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "charclass/csm.hpp"
#include "support.hpp"

using namespace charclass;
using namespace testing;

namespace {

const ComputeOptions kSymbolic{};

struct Checker {
  std::vector<std::string> failures;
  int checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

template <class T>
std::string show(const std::vector<T>& v) {
  std::ostringstream s;
  s << "(";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  s << ")";
  return s.str();
}

bool report(int number, const char* title, const std::function<void(Checker&)>& body) {
  Checker c;
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = c.failures.empty();
  std::printf("%s criterion %d: %s (%d checks, %.1fs)\n", ok ? "PASS" : "FAIL", number, title, c.checks, secs);
  for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
  std::fflush(stdout);
  return ok;
}

// m H (1+H)^(n+1) / (1+mH) mod H^(n+1), by plain series arithmetic.
std::vector<std::int64_t> smooth_oracle(int n, int m) {
  std::vector<std::int64_t> a(n + 1, 0);
  a[0] = 1;
  for (int k = 0; k < n + 1; ++k)
    for (int i = n; i >= 1; --i) a[i] += a[i - 1];
  // divide by 1 + mH
  std::vector<std::int64_t> q(n + 1, 0);
  for (int i = 0; i <= n; ++i) q[i] = a[i] - (i ? m * q[i - 1] : 0);
  std::vector<std::int64_t> out(n + 1, 0);
  for (int i = 1; i <= n; ++i) out[i] = m * q[i - 1];
  return out;
}

std::vector<std::int64_t> coeffs(const ClassExpr& c) {
  return std::vector<std::int64_t>(c.coeffs().data(), c.coeffs().data() + c.coeffs().size());
}

SegreProfile random_profile(Rng& rng) {
  int n = std::uniform_int_distribution<int>(1, 8)(rng);
  int k = std::uniform_int_distribution<int>(-1, n - 1)(rng);
  int r = std::uniform_int_distribution<int>(0, 10)(rng);
  SegreProfile sp{n, k, r, std::vector<std::int64_t>(n + 1, 0)};
  sp.stilde[0] = 1;
  if (k >= 0)
    for (int i = n - k; i <= n; ++i) sp.stilde[i] = std::uniform_int_distribution<std::int64_t>(-40, 40)(rng);
  return sp;
}

void twisted_cubic_criterion(Checker& c) {
  auto I = twisted_cubic();
  Rng rng(7);
  auto res = residual_degrees_symbolic(I, rng);
  c.expect(res.at(2) == 1 && res.at(3) == 0, "symbolic residual degrees " + show(res.degrees));
  auto s = segre_from_residuals(res);
  c.expect(s.values == std::vector<std::int64_t>{3, -10}, "Segre degrees " + show(s.values));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng r(seed);
    TrackerConfig cfg;
    cfg.seed = seed;
    auto num = residual_degrees_numeric(I, r, cfg);
    c.expect(num.degrees == std::vector<std::int64_t>{1, 0},
             "numeric residual degrees " + show(num.degrees) + " for seed " + std::to_string(seed));
  }
}

void nodal_cubic_criterion(Checker& c) {
  auto R = fp_ring({"x", "y", "z"});
  auto f = parse_in(R, kNodalCubic);
  Rng rng(3);
  auto r = csm_hypersurface(f, rng);
  c.expect(r.degrees == std::vector<std::int64_t>{3, 1}, "CSM degrees " + show(r.degrees));
  c.expect(r.pushforward == ClassExpr(2, {0, 3, 1}), "pushforward " + to_string(r.pushforward));
  c.expect(r.euler == 1, "Euler characteristic " + std::to_string(r.euler));
  Rng srng(4);
  auto sing = segre_degrees(jacobian_ideal(f), kSymbolic, srng);
  auto G = shadow_from_segre(profile_from_segre(sing, 2));
  c.expect(G == ClassExpr(2, {1, 2, 3}), "shadow " + to_string(G));
}

void censoring_criterion(Checker& c) {
  auto R = fp_ring({"p0", "p1", "p2", "p12"});
  auto I = ideal_of(R, {kCensoring});
  Rng rng(4);
  auto ml = ml_degree(I, kSymbolic, rng);
  c.expect(ml.chi_x == 5, "chi(X) = " + std::to_string(ml.chi_x));
  c.expect(ml.chi_cut == 2, "chi(X cut) = " + std::to_string(ml.chi_cut));
  c.expect(ml.ml_degree == 3, "ML degree = " + std::to_string(ml.ml_degree));
}

void segre_embedding_criterion(Checker& c) {
  auto R = fp_ring({"a", "b", "c", "d", "e", "f"});
  Rng rng(5);
  auto e = euler_characteristic(ideal_of(R, {"a*e - b*d", "a*f - c*d", "b*f - c*e"}), kSymbolic, rng);
  c.expect(e == 6, "Euler characteristic " + std::to_string(e));
}

void smooth_oracle_criterion(Checker& c) {
  struct Case {
    std::vector<std::string> vars;
    const char* f;
    int m;
  };
  std::vector<Case> fixed = {
      {{"x", "y", "z"}, "x^2 + y^2 + z^2", 2},
      {{"x", "y", "z"}, "x^3 + y^3 + z^3", 3},
      {{"x", "y", "z"}, "x^4 + y^4 + z^4", 4},
      {{"x", "y", "z", "w"}, "x*w - y*z", 2},
      {{"x", "y", "z", "w"}, "x^3 + y^3 + z^3 + w^3", 3},
  };
  for (const auto& k : fixed) {
    auto R = fp_ring(k.vars);
    Rng rng(1);
    auto r = csm_hypersurface(parse_in(R, k.f), rng);
    auto want = smooth_oracle(R->ambient_dim(), k.m);
    c.expect(coeffs(r.pushforward) == want,
             std::string(k.f) + ": got " + show(coeffs(r.pushforward)) + ", oracle " + show(want));
  }
}

void property_criterion(Checker& c) {
  // (a) sum_i C(j,i) C(i,t) (-1)^(i-t) = [j == t], exhaustively
  int na = 0;
  for (int j = 0; j <= 25; ++j)
    for (int t = 0; t <= j; ++t, ++na) {
      std::int64_t sum = 0;
      for (int i = t; i <= j; ++i) sum += binomial(j, i) * binomial(i, t) * ((i - t) % 2 == 0 ? 1 : -1);
      c.expect(sum == (j == t ? 1 : 0), "binomial identity j=" + std::to_string(j) + " t=" + std::to_string(t));
    }
  c.expect(na >= 200, "binomial identity case count");

  Rng rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    // (b)
    auto sp = random_profile(rng);
    c.expect(segre_from_shadow(shadow_from_segre(sp), sp.r, sp.n, sp.k) == sp, "shadow round trip");
    // (c)
    auto push = csm_from_shadow(shadow_from_segre(sp));
    auto deg = csm_degrees_from_segre(sp);
    bool same = deg.size() == static_cast<std::size_t>(sp.n);
    for (int p = 0; same && p < sp.n; ++p) same = deg[p] == push[1 + p];
    c.expect(same, "closed form vs shadow composition");
    // (d) residuals from Segre degrees satisfy the relation, and solve back
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int m = std::uniform_int_distribution<int>(1, 6)(rng);
    SegreDegrees s{n, k, {}};
    for (int i = 0; i <= k; ++i) s.values.push_back(std::uniform_int_distribution<std::int64_t>(-50, 50)(rng));
    auto res = residuals_from_segre(s, m);
    bool relation = true;
    for (int p = 0; p <= k; ++p) {
      const int d = n - k + p;
      std::int64_t rhs = ipow(m, d) - res.at(d);
      for (int i = 0; i < p; ++i) rhs -= binomial(d, p - i) * ipow(m, p - i) * s.values[i];
      relation = relation && rhs == s.values[p];
    }
    c.expect(relation, "residual relation");
    c.expect(segre_from_residuals(res) == s, "triangular solve round trip");
  }

  // (e)
  auto R = fp_ring({"x", "y", "z"});
  Rng crng(31337);
  std::uniform_int_distribution<int> dd(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    int a = dd(crng), b = dd(crng);
    auto f = random_form(R, a, crng);
    if (trial % 4 == 0 && a >= 2) f = random_form(R, 1, crng) * random_form(R, a - 1, crng);
    auto g = random_form(R, b, crng);
    Rng r1(trial), r2(trial + 1000), r3(trial + 2000), r4(trial + 3000);
    auto ef = csm_hypersurface(f, kSymbolic, r1).euler;
    auto eg = csm_hypersurface(g, kSymbolic, r2).euler;
    auto efg = csm_hypersurface(f * g, kSymbolic, r3).euler;
    auto ecap = csm_subscheme(Ideal<Fp>(R, {f, g}), kSymbolic, r4).euler;
    c.expect(ecap == a * b, "curve pair " + std::to_string(trial) + ": intersection");
    c.expect(efg == ef + eg - ecap, "curve pair " + std::to_string(trial) + ": union");
  }
}

void backend_criterion(Checker& c) {
  auto P2 = fp_ring({"x", "y", "z"});
  std::vector<std::pair<const char*, Ideal<Fp>>> ideals = {
      {"twisted cubic", twisted_cubic()},
      {"nodal cubic singular locus", jacobian_ideal(parse_in(P2, kNodalCubic))},
      {"smooth conic", ideal_of(P2, {"x^2 + y^2 + z^2"})},
  };
  for (const auto& [name, I] : ideals) {
    ComputeOptions num;
    num.backend = Backend::numeric;
    Rng a(21), b(22);
    auto sym = residual_degrees(I, kSymbolic, a);
    auto nres = residual_degrees(I, num, b);
    c.expect(sym == nres, std::string(name) + ": symbolic " + show(sym.degrees) + ", numeric " + show(nres.degrees));
  }
}

void scope_criterion(Checker& c) {
  // Nothing is pinned here: the benchmark timings and the surface's Euler
  // number are out of scope. The minors surface runs as a stretch case.
  auto R = fp_ring({"x0", "x1", "x2", "x3", "x4"});
  Rng pick(5);
  std::uniform_int_distribution<int> coef(-9, 9);
  auto linear = [&] {
    Polynomial<Fp> l(R);
    for (int i = 0; i < 5; ++i)
      l += Polynomial<Fp>::constant(R, R->field().from_int(coef(pick))) * Polynomial<Fp>::variable(R, i);
    return l;
  };
  std::vector<std::vector<Polynomial<Fp>>> M(2);
  for (auto& row : M)
    for (int j = 0; j < 3; ++j) row.push_back(linear());
  Ideal<Fp> I(R, {M[0][0] * M[1][1] - M[0][1] * M[1][0], M[0][0] * M[1][2] - M[0][2] * M[1][0],
                  M[0][1] * M[1][2] - M[0][2] * M[1][1]});
  Rng rng(1);
  auto e = euler_characteristic(I, kSymbolic, rng);
  c.expect(I.stats().dim == 2, "the minors ideal defines a surface");
  std::printf("    stretch: minors surface in P^4 has computed Euler characteristic %lld (not pinned)\n",
              static_cast<long long>(e));
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "twisted cubic residual and Segre degrees, numeric over 5 seeds", twisted_cubic_criterion);
  ok &= report(2, "nodal plane cubic CSM class and shadow", nodal_cubic_criterion);
  ok &= report(3, "random censoring model Euler characteristics and ML degree", censoring_criterion);
  ok &= report(4, "Segre embedding of P1 x P2 has Euler characteristic 6", segre_embedding_criterion);
  ok &= report(5, "smooth hypersurfaces against the classical formula", smooth_oracle_criterion);
  ok &= report(6, "property suites", property_criterion);
  ok &= report(7, "symbolic and numeric residual degrees agree", backend_criterion);
  ok &= report(8, "benchmark timings and surface Euler number not reproduced", scope_criterion);
  return ok ? 0 : 1;
}
