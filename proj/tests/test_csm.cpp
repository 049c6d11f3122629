#include "doctest.h"

#include <Eigen/Eigenvalues>

#include "charclass/csm.hpp"
#include "support.hpp"

using namespace charclass;
using namespace testing;

namespace {

const ComputeOptions kOpts{};

CsmResult csm_of(const Ideal<Fp>& I, std::uint64_t seed = 1) {
  Rng rng(seed);
  return csm_subscheme(I, kOpts, rng);
}

std::int64_t euler_of(const Ideal<Fp>& I, std::uint64_t seed = 1) { return csm_of(I, seed).euler; }

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

// Number of critical points of sum u_i log p_i - (sum u) log(sum p) on the
// line a.p = 0 in P^2, counted as roots of the cleared derivative.
int line_ml_critical_points(const std::array<double, 3>& a, const std::array<double, 3>& u) {
  // parametrize the line as P + sQ
  Eigen::Vector3d av(a[0], a[1], a[2]);
  Eigen::Vector3d P = av.cross(Eigen::Vector3d(1, 0, 0)), Q = av.cross(Eigen::Vector3d(0, 1, 0));
  // four linear forms in s: p_0, p_1, p_2 and their sum
  std::array<std::array<double, 2>, 4> lin;
  for (int i = 0; i < 3; ++i) lin[i] = {P[i], Q[i]};
  lin[3] = {P.sum(), Q.sum()};
  std::array<double, 4> w = {u[0], u[1], u[2], -(u[0] + u[1] + u[2])};
  using Poly = std::vector<double>;  // ascending coefficients
  auto mul = [](const Poly& x, const Poly& y) {
    Poly z(x.size() + y.size() - 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
    return z;
  };
  Poly num(4, 0.0);
  for (int i = 0; i < 4; ++i) {
    Poly term{w[i] * lin[i][1]};
    for (int j = 0; j < 4; ++j)
      if (j != i) term = mul(term, Poly{lin[j][0], lin[j][1]});
    for (std::size_t c = 0; c < term.size(); ++c) num[c] += term[c];
  }
  double scale = 0.0;
  for (double c : num) scale = std::max(scale, std::abs(c));
  while (!num.empty() && std::abs(num.back()) < 1e-9 * scale) num.pop_back();
  int deg = static_cast<int>(num.size()) - 1;
  if (deg <= 0) return 0;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -num[i] / num[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(C);
  int count = 0;
  for (int i = 0; i < deg; ++i) {
    auto s = es.eigenvalues()[i];
    bool on_arrangement = false;
    for (const auto& l : lin)
      if (std::abs(l[0] + l[1] * s) < 1e-8) on_arrangement = true;
    if (!on_arrangement) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("binomial identity") {
  int cases = 0;
  for (int j = 0; j <= 25; ++j)
    for (int t = 0; t <= j; ++t) {
      std::int64_t sum = 0;
      for (int i = t; i <= j; ++i) sum += binomial(j, i) * binomial(i, t) * ((i - t) % 2 == 0 ? 1 : -1);
      CHECK(sum == (j == t ? 1 : 0));
      ++cases;
    }
  CHECK(cases >= 200);
}

TEST_CASE("shadow and Segre profile are inverse") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    auto sp = random_profile(rng);
    auto G = shadow_from_segre(sp);
    CHECK(segre_from_shadow(G, sp.r, sp.n, sp.k) == sp);
    // and starting from an arbitrary integer shadow
    ClassExpr H(sp.n);
    for (int j = 0; j <= sp.n; ++j) H[j] = std::uniform_int_distribution<std::int64_t>(-100, 100)(rng);
    auto back = segre_from_shadow(H, sp.r, sp.n, sp.k);
    std::int64_t r = sp.r;
    ClassExpr again(sp.n);
    for (int j = 0; j <= sp.n; ++j)
      for (int i = 0; i <= j; ++i) again[j] += binomial(j, i) * ipow(r, j - i) * back.stilde[i];
    CHECK(again == H);
  }
}

TEST_CASE("closed form agrees with the shadow route") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    auto sp = random_profile(rng);
    auto push = csm_from_shadow(shadow_from_segre(sp));
    auto deg = csm_degrees_from_segre(sp);
    REQUIRE(deg.size() == static_cast<std::size_t>(sp.n));
    for (int p = 0; p < sp.n; ++p) CHECK(deg[p] == push[1 + p]);
  }
}

TEST_CASE("shadow examples") {
  SegreProfile nodal{2, 0, 2, {1, 0, -1}};
  auto G = shadow_from_segre(nodal);
  CHECK(G == ClassExpr(2, {1, 2, 3}));
  CHECK(segre_from_shadow(G, 2, 2, 0) == nodal);
  CHECK(csm_from_shadow(G) == ClassExpr(2, {0, 3, 1}));
  CHECK(csm_degrees_from_segre(nodal) == std::vector<std::int64_t>{3, 1});

  auto smooth = smooth_profile(4, 3);
  CHECK(coeffs(shadow_from_segre(smooth)) == std::vector<std::int64_t>{1, 3, 9, 27, 81});
  SegreProfile flat{3, 1, 0, {1, 0, -4, 7}};
  CHECK(coeffs(shadow_from_segre(flat)) == std::vector<std::int64_t>{1, 0, -4, 7});
  CHECK(csm_from_shadow(ClassExpr(2, {1, 1, 1})) == ClassExpr(2, {0, 2, 2}));
  CHECK(csm_from_shadow(ClassExpr::one(3)) == ClassExpr(3, {0, 1, 3, 3}));
  CHECK(to_string(ClassExpr(2, {0, 3, 1})) == "3H + H^2");
  CHECK(to_string(ClassExpr(2, {1, 2, 3})) == "1 + 2H + 3H^2");
  CHECK(to_string(ClassExpr(3, {1, -4, 0, -1})) == "1 - 4H - H^3");
  CHECK(to_string(ClassExpr(2)) == "0");
}

TEST_CASE("class arithmetic") {
  auto H = ClassExpr::hyperplane(3);
  CHECK(H.pow(3) == ClassExpr(3, {0, 0, 0, 1}));
  CHECK(H.pow(4) == ClassExpr(3));
  CHECK((ClassExpr::one(3) + H).pow(4) == ClassExpr(3, {1, 4, 6, 4}));
  CHECK_THROWS_AS(ClassExpr(2) + ClassExpr(3), std::invalid_argument);
  CHECK(smooth_hypersurface_csm(2, 2) == ClassExpr(2, {0, 2, 2}));
  CHECK(smooth_hypersurface_csm(2, 3) == ClassExpr(2, {0, 3, 0}));
}

TEST_CASE("nodal cubic") {
  auto R = fp_ring({"x", "y", "z"});
  Rng rng(3);
  auto r = csm_hypersurface(parse_in(R, kNodalCubic), rng);
  CHECK(r.degrees == std::vector<std::int64_t>{3, 1});
  CHECK(r.pushforward == ClassExpr(2, {0, 3, 1}));
  CHECK(r.euler == 1);
}

TEST_CASE("smooth hypersurfaces match the classical formula") {
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
  for (const auto& c : fixed) {
    auto R = fp_ring(c.vars);
    Rng rng(1);
    auto r = csm_hypersurface(parse_in(R, c.f), rng);
    CHECK(r.pushforward == smooth_hypersurface_csm(R->ambient_dim(), c.m));
  }
  Rng rng(17);
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 4; ++m) {
      std::vector<std::string> vars;
      for (int i = 0; i <= n; ++i) vars.push_back("x" + std::to_string(i));
      auto R = fp_ring(vars);
      auto r = csm_hypersurface(random_form(R, m, rng), rng);
      CHECK(r.pushforward == smooth_hypersurface_csm(n, m));
    }
}

TEST_CASE("golden Euler characteristics") {
  auto P2 = fp_ring({"x", "y", "z"});
  auto P3 = fp_ring({"x", "y", "z", "w"});
  CHECK(euler_of(ideal_of(P3, {"x*w - y*z"})) == 4);
  CHECK(euler_of(ideal_of(P2, {"x*y"})) == 3);
  CHECK(euler_of(twisted_cubic()) == 2);
  CHECK(euler_of(ideal_of(P2, {"x", "y"})) == 1);
  CHECK(euler_of(ideal_of(P2, {"x^3 + y^3 + z^3"})) == 0);
  CHECK(euler_of(Ideal<Fp>(P3, {})) == 4);
  // two skew lines
  CHECK(euler_of(ideal_of(P3, {"x*z", "x*w", "y*z", "y*w"})) == 4);
  // a conic and a line meeting it twice
  CHECK(euler_of(ideal_of(P2, {"y*(x*z - y^2)"})) == 2);
}

TEST_CASE("censoring model") {
  auto R = fp_ring({"p0", "p1", "p2", "p12"});
  auto I = ideal_of(R, {kCensoring});
  CHECK(euler_of(I) == 5);
  Rng rng(4);
  auto ml = ml_degree(I, kOpts, rng);
  CHECK(ml.chi_x == 5);
  CHECK(ml.chi_cut == 2);
  CHECK(ml.ml_degree == 3);
  CHECK(ml.dim == 2);
  CHECK(ml.warnings.empty());
}

TEST_CASE("Segre embedding of P1 x P2") {
  auto R = fp_ring({"a", "b", "c", "d", "e", "f"});
  auto I = ideal_of(R, {"a*e - b*d", "a*f - c*d", "b*f - c*e"});
  auto r = csm_of(I, 5);
  CHECK(r.euler == 6);
  CHECK(r.dim == 3);
  CHECK(r.degrees.front() == 3);
}

TEST_CASE("degree of the support appears in the pushforward") {
  auto P2 = fp_ring({"x", "y", "z"});
  auto P3 = fp_ring({"x", "y", "z", "w"});
  std::vector<Ideal<Fp>> reduced = {twisted_cubic(), ideal_of(P2, {kNodalCubic}), ideal_of(P3, {"x*w - y*z"}),
                                    ideal_of(P2, {"x*y"}), ideal_of(P3, {"x", "y*z"})};
  for (const auto& I : reduced) {
    auto r = csm_of(I, 2);
    CHECK(r.pushforward[r.pushforward.n() - r.dim] == I.stats().degree);
  }
  // non-reduced input: only the support counts
  auto r = csm_of(ideal_of(P2, {"x^2*y"}), 2);
  CHECK(r.degrees.front() == 2);
  CHECK(r.euler == 3);
}

TEST_CASE("inclusion-exclusion on random plane curve pairs") {
  auto R = fp_ring({"x", "y", "z"});
  Rng rng(31337);
  std::uniform_int_distribution<int> dd(1, 3);
  int cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int a = dd(rng), b = dd(rng);
    auto f = random_form(R, a, rng);
    // every fourth case uses a reducible, singular first curve
    if (trial % 4 == 0 && a >= 2) f = random_form(R, 1, rng) * random_form(R, a - 1, rng);
    auto g = random_form(R, b, rng);
    Rng r1(trial), r2(trial + 1000), r3(trial + 2000), r4(trial + 3000);
    auto ef = csm_hypersurface(f, kOpts, r1).euler;
    auto eg = csm_hypersurface(g, kOpts, r2).euler;
    auto efg = csm_hypersurface(f * g, kOpts, r3).euler;
    auto ecap = csm_subscheme(Ideal<Fp>(R, {f, g}), kOpts, r4).euler;
    // generic curves meet transversally in a*b points
    CHECK(ecap == a * b);
    CHECK(efg == ef + eg - ecap);
    if (trial % 4 != 0) CHECK(ef == 3 * a - a * a);
    ++cases;
  }
  CHECK(cases >= 200);
}

TEST_CASE("affine Euler characteristics") {
  auto A2 = fp_ring({"x", "y"});
  Rng rng(8);
  CHECK(affine_euler(std::vector{parse_in(A2, "y")}, A2, kOpts, rng).euler == 1);
  auto hyperbola = affine_euler(std::vector{parse_in(A2, "x*y - 1")}, A2, kOpts, rng);
  CHECK(hyperbola.chi_closure == 2);
  CHECK(hyperbola.chi_infinity == 2);
  CHECK(hyperbola.euler == 0);
  CHECK(affine_euler(std::vector<Polynomial<Fp>>{}, A2, kOpts, rng).euler == 1);
  auto A3 = fp_ring({"x", "y", "z"});
  CHECK(affine_euler(std::vector<Polynomial<Fp>>{}, A3, kOpts, rng).euler == 1);
  // a parabola is a line
  CHECK(affine_euler(std::vector{parse_in(A2, "y - x^2")}, A2, kOpts, rng).euler == 1);
  // generators whose homogenizations meet at infinity: (x, x + 1) is empty
  CHECK_THROWS_AS(affine_euler(std::vector{parse_in(A2, "x"), parse_in(A2, "x + 1")}, A2, kOpts, rng), DomainError);
  // two points
  CHECK(affine_euler(std::vector{parse_in(A2, "x^2 - 1"), parse_in(A2, "y")}, A2, kOpts, rng).euler == 2);
  CHECK_THROWS_AS(affine_euler(std::vector{parse_in(A2, "3")}, A2, kOpts, rng), DomainError);
}

TEST_CASE("ML degree of a generic line in the plane") {
  // brute-force oracle: count critical points of the likelihood on the line
  std::array<double, 3> a = {0.37, -1.21, 0.83};
  std::array<double, 3> u = {3, 5, 7};
  int oracle = line_ml_critical_points(a, u);
  CHECK(oracle == line_ml_critical_points({1.1, 0.4, -2.3}, {2, 9, 4}));

  auto R = fp_ring({"p0", "p1", "p2"});
  Rng rng(6);
  auto ml = ml_degree(ideal_of(R, {"37*p0 - 121*p1 + 83*p2"}), kOpts, rng);
  CHECK(ml.chi_x == 2);
  CHECK(ml.chi_cut == 4);
  CHECK(ml.ml_degree == oracle);
}

TEST_CASE("ML degree edge cases") {
  auto R = fp_ring({"p0", "p1", "p2"});
  Rng rng(1);
  // X inside a coordinate hyperplane: U is empty
  auto empty = ml_degree(ideal_of(R, {"p0"}), kOpts, rng);
  CHECK(empty.ml_degree == 0);
  CHECK(!empty.warnings.empty());
  // the whole plane: the complement of four general lines
  auto plane = ml_degree(Ideal<Fp>(R, {}), kOpts, rng);
  CHECK(plane.chi_x == 3);
  CHECK(plane.chi_cut == 2);
  CHECK(plane.ml_degree == 1);
  CHECK_THROWS_AS(ml_degree(ideal_of(R, {"1"}), kOpts, rng), DomainError);
}

TEST_CASE("results are reproducible and independent of threading") {
  auto I = twisted_cubic();
  ComputeOptions one = kOpts;
  one.tracker.threads = 1;
  Rng a(77), b(77);
  auto r1 = csm_subscheme(I, kOpts, a);
  auto r2 = csm_subscheme(I, one, b);
  CHECK(r1.pushforward == r2.pushforward);
  ComputeOptions verify = kOpts;
  verify.verify = true;
  Rng c(5);
  CHECK(csm_subscheme(I, verify, c).euler == 2);
}

TEST_CASE("csm errors") {
  auto R = fp_ring({"x", "y", "z"});
  Rng rng(1);
  CHECK_THROWS_AS(csm_subscheme(ideal_of(R, {"x", "y", "z"}), kOpts, rng), DomainError);
  CHECK_THROWS_AS(csm_subscheme(ideal_of(R, {"2"}), kOpts, rng), DomainError);
  CHECK_THROWS_AS(csm_hypersurface(parse_in(R, "x^2 + y"), rng), std::invalid_argument);
  CHECK_THROWS_AS(csm_hypersurface(parse_in(R, "5"), rng), std::invalid_argument);
  auto whole = csm_subscheme(Ideal<Fp>(R, {}), kOpts, rng);
  CHECK(whole.euler == 3);
  CHECK(whole.degrees == std::vector<std::int64_t>{1, 3, 3});
  // a characteristic dividing the degree is a genericity failure
  auto R3 = fp_ring({"x", "y", "z"}, 3);
  CHECK_THROWS_AS(csm_hypersurface(parse_in(R3, "x^3 + y^3 + z^3 + x*y*z"), rng), GenericityError);
}

TEST_CASE("ML degree of a point off the arrangement") {
  auto R = fp_ring({"p0", "p1", "p2"});
  Rng rng(2);
  auto ml = ml_degree(ideal_of(R, {"p0 - 2*p2", "p1 - 3*p2"}), kOpts, rng);
  CHECK(ml.chi_x == 1);
  CHECK(ml.chi_cut == 0);
  CHECK(ml.ml_degree == 1);
}
