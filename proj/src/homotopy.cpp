#include "charclass/homotopy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace charclass {

void TrackerConfig::validate() const {
  if (!(corrector_tol > 0 && on_variety_tol > 0 && cluster_tol > 0 && tracking_tol > 0))
    throw std::invalid_argument("TrackerConfig: tolerances must be positive");
  if (max_step_halvings < 1 || max_newton_iters < 1 || level_retries < 1 || max_steps < 1)
    throw std::invalid_argument("TrackerConfig: iteration limits must be positive");
  if (!(initial_step > 0 && max_step >= initial_step && max_step <= 1))
    throw std::invalid_argument("TrackerConfig: step sizes must satisfy 0 < initial <= max <= 1");
}

PolySystem::PolySystem(std::vector<Polynomial<Complex>> polys) : polys_(std::move(polys)) {
  if (polys_.empty()) return;
  nvars_ = polys_.front().nvars();
  for (const auto& f : polys_) {
    f.check_ring(polys_.front());
    Flat flat;
    for (const auto& t : f.terms()) {
      flat.coeff.push_back(t.coeff);
      flat.exps.push_back(t.mono.exp);
      for (int i = 0; i < nvars_; ++i) max_exp_ = std::max<int>(max_exp_, t.mono.exp[i]);
    }
    flat_.push_back(std::move(flat));
  }
}

std::vector<int> PolySystem::degrees() const {
  std::vector<int> out;
  for (const auto& f : polys_) out.push_back(f.is_zero() ? 0 : f.degree());
  return out;
}

namespace {

// pw(i, e) = z_i^e
struct PowerTable {
  int stride;
  std::vector<Complex> data;
  PowerTable(const ComplexVector& z, int max_exp) : stride(max_exp + 1), data(z.size() * (max_exp + 1)) {
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      Complex acc = 1.0;
      for (int e = 0; e <= max_exp; ++e) {
        data[i * stride + e] = acc;
        acc *= z[i];
      }
    }
  }
  Complex operator()(int i, int e) const { return data[i * stride + e]; }
};

}  // namespace

ComplexVector PolySystem::values(const ComplexVector& z) const {
  PowerTable pw(z, max_exp_);
  ComplexVector out(size());
  for (int k = 0; k < size(); ++k) {
    Complex acc = 0.0;
    const auto& f = flat_[k];
    for (std::size_t t = 0; t < f.coeff.size(); ++t) {
      Complex v = f.coeff[t];
      for (int i = 0; i < nvars_; ++i)
        if (f.exps[t][i]) v *= pw(i, f.exps[t][i]);
      acc += v;
    }
    out[k] = acc;
  }
  return out;
}

ComplexMatrix PolySystem::jacobian(const ComplexVector& z) const {
  PowerTable pw(z, max_exp_);
  ComplexMatrix J = ComplexMatrix::Zero(size(), nvars_);
  for (int k = 0; k < size(); ++k) {
    const auto& f = flat_[k];
    for (std::size_t t = 0; t < f.coeff.size(); ++t) {
      const auto& e = f.exps[t];
      for (int v = 0; v < nvars_; ++v) {
        if (!e[v]) continue;
        Complex d = f.coeff[t] * static_cast<double>(e[v]) * pw(v, e[v] - 1);
        for (int i = 0; i < nvars_; ++i)
          if (i != v && e[i]) d *= pw(i, e[i]);
        J(k, v) += d;
      }
    }
  }
  return J;
}

Homotopy::Homotopy(PolySystem target, PolySystem start, Complex gamma)
    : target_(std::move(target)), start_(std::move(start)), gamma_(gamma) {
  if (target_.size() != start_.size() || target_.nvars() != start_.nvars() || target_.size() != target_.nvars())
    throw std::invalid_argument("Homotopy: target and start must be square systems of the same shape");
}

ComplexVector Homotopy::values(const ComplexVector& z, double t) const {
  return (1.0 - t) * target_.values(z) + t * gamma_ * start_.values(z);
}

ComplexMatrix Homotopy::jacobian(const ComplexVector& z, double t) const {
  return (1.0 - t) * target_.jacobian(z) + t * gamma_ * start_.jacobian(z);
}

ComplexVector Homotopy::dt(const ComplexVector& z) const { return gamma_ * start_.values(z) - target_.values(z); }

PolySystem total_degree_start_system(const std::vector<int>& degrees) {
  const int n = static_cast<int>(degrees.size());
  if (n == 0) throw std::invalid_argument("start system: no equations");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("z" + std::to_string(i));
  auto ring = make_ring<Complex>(names, Field<Complex>{});
  std::vector<Polynomial<Complex>> polys;
  for (int i = 0; i < n; ++i) {
    if (degrees[i] < 1) throw std::invalid_argument("start system: degrees must be positive");
    std::vector<int> e(n, 0);
    e[i] = degrees[i];
    polys.push_back(Polynomial<Complex>::monomial(ring, 1.0, ring->order().make(e)) -
                    Polynomial<Complex>::constant(ring, 1.0));
  }
  return PolySystem(std::move(polys));
}

std::vector<ComplexVector> total_degree_start_points(const std::vector<int>& degrees) {
  const int n = static_cast<int>(degrees.size());
  std::vector<ComplexVector> out;
  std::vector<int> idx(n, 0);
  for (;;) {
    ComplexVector z(n);
    for (int i = 0; i < n; ++i) z[i] = std::polar(1.0, 2.0 * std::numbers::pi * idx[i] / degrees[i]);
    out.push_back(z);
    int i = 0;
    while (i < n && ++idx[i] == degrees[i]) idx[i++] = 0;
    if (i == n) break;
  }
  return out;
}

namespace {

double condition_number(const ComplexMatrix& J) {
  Eigen::JacobiSVD<ComplexMatrix> svd(J);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  double lo = s[s.size() - 1];
  return lo > 0 ? s[0] / lo : std::numeric_limits<double>::infinity();
}

// Newton at fixed t; returns the final update norm, or infinity on a
// singular step.
double newton(const Homotopy& h, ComplexVector& z, double t, int iters, double tol) {
  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < iters; ++it) {
    auto lu = h.jacobian(z, t).partialPivLu();
    ComplexVector dz = lu.solve(-h.values(z, t));
    if (!dz.allFinite()) return std::numeric_limits<double>::infinity();
    z += dz;
    last = dz.norm();
    if (last < tol * (1.0 + z.norm())) break;
  }
  return last;
}

}  // namespace

PathEndpoint track_path(const ComplexVector& start, const Homotopy& h, const TrackerConfig& cfg) {
  PathEndpoint out;
  ComplexVector z = start;
  double t = 1.0;
  double step = cfg.initial_step;
  const double min_step = cfg.initial_step * std::ldexp(1.0, -cfg.max_step_halvings);
  // dz/dt = -H_z^{-1} H_t
  auto velocity = [&](const ComplexVector& x, double s) -> ComplexVector {
    return h.jacobian(x, s).partialPivLu().solve(-h.dt(x));
  };
  int streak = 0;
  for (int n = 0; t > 0.0; ++n) {
    if (n >= cfg.max_steps || step < min_step || z.norm() > cfg.divergence_norm) {
      // a stall close to t = 0 may still sit next to a regular endpoint
      if (t < cfg.stall_endgame && z.norm() <= cfg.divergence_norm) break;
      out.point = z;
      out.status = PathStatus::diverged;
      return out;
    }
    double dt = std::min(step, t);
    // RK4 predictor backwards in t
    ComplexVector k1 = velocity(z, t);
    ComplexVector k2 = velocity(z - 0.5 * dt * k1, t - 0.5 * dt);
    ComplexVector k3 = velocity(z - 0.5 * dt * k2, t - 0.5 * dt);
    ComplexVector k4 = velocity(z - dt * k3, t - dt);
    ComplexVector trial = z - (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    double t1 = t - dt;
    // Newton must contract quickly from the prediction, otherwise the step
    // is too long and may have jumped to a neighbouring path
    bool ok = trial.allFinite();
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; ok && it < cfg.max_newton_iters; ++it) {
      ComplexVector dz = h.jacobian(trial, t1).partialPivLu().solve(-h.values(trial, t1));
      double nd = dz.norm();
      if (!dz.allFinite() || (it > 0 && nd > 0.25 * prev)) {
        ok = false;
        break;
      }
      trial += dz;
      prev = nd;
      if (nd < cfg.tracking_tol * (1.0 + trial.norm())) break;
    }
    ok = ok && prev < cfg.tracking_tol * (1.0 + trial.norm());
    if (ok) {
      z = trial;
      t = t1;
      if (++streak >= 3) {
        step = std::min(2.0 * step, cfg.max_step);
        streak = 0;
      }
    } else {
      step /= 2.0;
      streak = 0;
    }
  }

  // refine at t = 0
  const bool stalled = t > 0.0;
  double upd = newton(h, z, 0.0, 10 * cfg.max_newton_iters, cfg.corrector_tol);
  out.point = z;
  if (!z.allFinite() || z.norm() > cfg.divergence_norm) {
    out.status = PathStatus::diverged;
    return out;
  }
  out.condition = condition_number(h.target().jacobian(z));
  if (out.condition > cfg.condition_limit || !(upd < cfg.corrector_tol * (1.0 + z.norm())))
    out.status = stalled ? PathStatus::diverged : PathStatus::singular;
  else
    out.status = PathStatus::converged;
  return out;
}

double scaled_residual(const std::vector<Polynomial<Complex>>& ideal, const ComplexVector& x) {
  ComplexVector u = x / x.norm();
  std::vector<Complex> pt(u.data(), u.data() + u.size());
  std::span<const Complex> at(pt);
  double worst = 0.0;
  for (const auto& g : ideal) {
    // |g| / |grad g| estimates the distance to V(g), also near its singular
    // points
    double value = std::abs(evaluate(g, at));
    if (value == 0.0) continue;
    double grad = 0.0;
    for (int i = 0; i < g.nvars(); ++i) grad += std::norm(evaluate(partial(g, i), at));
    grad = std::sqrt(grad);
    worst = std::max(worst, grad > 0.0 ? value / grad : std::numeric_limits<double>::infinity());
  }
  return worst;
}

Classification classify_endpoint(const ComplexVector& x, const std::vector<Polynomial<Complex>>& ideal,
                                 double jacobian_condition, const TrackerConfig& cfg) {
  Classification c;
  double res = scaled_residual(ideal, x);
  c.ambiguous = res > cfg.on_variety_tol / 10.0 && res < cfg.on_variety_tol * 10.0;
  if (res < cfg.on_variety_tol)
    c.value = EndpointClass::solution;
  else if (jacobian_condition <= cfg.condition_limit)
    c.value = EndpointClass::non_solution;
  return c;
}

namespace {

Complex random_complex(Rng& rng) { return Field<Complex>{}.random(rng); }

ComplexVector random_complex_vector(int n, Rng& rng) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = random_complex(rng);
  return v;
}

unsigned worker_count(const TrackerConfig& cfg) {
  return cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
}

struct LevelAttempt {
  LevelReport report;
  bool suspicious = false;  // ambiguous residual or merged duplicates
};

LevelAttempt attempt_level(const std::vector<Polynomial<Complex>>& gens, int d, int m, Rng& rng,
                           const TrackerConfig& cfg) {
  const auto& ring = gens.front().ring();
  const int N = ring->nvars();  // homogeneous coordinates
  LevelAttempt out;
  out.report.level = d;

  // random degree-m elements of the ideal
  std::vector<Polynomial<Complex>> f;
  for (int i = 0; i < d; ++i) {
    Polynomial<Complex> acc(ring);
    for (const auto& h : gens) acc += random_form(ring, m - h.degree(), rng) * h;
    f.push_back(acc);
  }

  // the slice L_{d+1} = ... = L_n = 0 on the random patch l = 1, as an affine
  // d-space x = x_p + B z
  ComplexMatrix A(N - d, N);
  for (int r = 0; r < N - d; ++r) A.row(r) = random_complex_vector(N, rng).transpose();
  ComplexVector rhs = ComplexVector::Zero(N - d);
  rhs[0] = 1.0;
  ComplexVector xp = A.completeOrthogonalDecomposition().solve(rhs);
  ComplexMatrix Q = A.adjoint().householderQr().householderQ();
  ComplexMatrix B = Q.rightCols(d);

  std::vector<std::string> names;
  for (int j = 0; j < d; ++j) names.push_back("z" + std::to_string(j));
  auto zring = make_ring<Complex>(names, Field<Complex>{});
  std::vector<Polynomial<Complex>> images;
  for (int i = 0; i < N; ++i) {
    Polynomial<Complex> img = Polynomial<Complex>::constant(zring, xp[i]);
    for (int j = 0; j < d; ++j) img += Polynomial<Complex>::constant(zring, B(i, j)) * Polynomial<Complex>::variable(zring, j);
    images.push_back(img);
  }
  std::vector<Polynomial<Complex>> sliced;
  for (const auto& g : f) sliced.push_back(compose(g, images));

  std::vector<int> degrees(d, m);
  PolySystem target(sliced);
  PolySystem start = total_degree_start_system(degrees);
  auto starts = total_degree_start_points(degrees);
  for (const auto& s : starts)
    if (start.values(s).norm() > cfg.corrector_tol) throw std::logic_error("start point fails the start system");
  Complex gamma = std::polar(1.0, std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng));
  Homotopy h(target, start, gamma);

  std::vector<PathEndpoint> ends(starts.size());
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i; (i = next++) < starts.size();) ends[i] = track_path(starts[i], h, cfg);
  };
  unsigned workers = std::min<std::size_t>(worker_count(cfg), starts.size());
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }

  out.report.paths = starts.size();
  std::vector<ComplexVector> found;
  for (auto& e : ends) {
    if (e.status == PathStatus::diverged) {
      ++out.report.diverged;
      continue;
    }
    ComplexVector x = xp + B * e.point;
    auto c = classify_endpoint(x, gens, e.condition, cfg);
    e.classification = c.value;
    e.residual = scaled_residual(gens, x);
    if (c.value == EndpointClass::solution) {
      ++out.report.converged;
      ++out.report.solutions;
      continue;
    }
    if (e.status == PathStatus::singular || c.value != EndpointClass::non_solution) {
      ++out.report.singular;
      continue;
    }
    ++out.report.converged;
    if (c.ambiguous) out.suspicious = true;
    bool dup = false;
    for (const auto& y : found)
      if ((y - e.point).norm() < cfg.cluster_tol * (1.0 + y.norm())) dup = true;
    if (dup) {
      out.suspicious = true;
      continue;
    }
    found.push_back(e.point);
  }
  out.report.non_solutions = found.size();
  return out;
}

}  // namespace

LevelReport count_non_solutions(const std::vector<Polynomial<Complex>>& gens, int d, int m, Rng& rng,
                                const TrackerConfig& cfg) {
  cfg.validate();
  if (gens.empty()) throw std::invalid_argument("count_non_solutions: no generators");
  const int n = gens.front().ring()->ambient_dim();
  if (d < 1 || d > n) throw std::invalid_argument("count_non_solutions: level out of range");
  for (const auto& g : gens)
    if (g.degree() > m) throw std::invalid_argument("count_non_solutions: degree bound below a generator degree");
  // with confirmation, two independent draws must agree; a rare unlucky
  // draw can hide a non-solution but not invent one
  const int needed = cfg.confirm ? 2 : 1;
  const int budget = needed * cfg.level_retries;
  std::vector<std::size_t> counts;
  for (int attempt = 1; attempt <= budget; ++attempt) {
    auto a = attempt_level(gens, d, m, rng, cfg);
    if (a.suspicious) continue;
    counts.push_back(a.report.non_solutions);
    if (std::count(counts.begin(), counts.end(), a.report.non_solutions) >= needed) {
      a.report.attempts = attempt;
      return a.report;
    }
  }
  throw NumericError("numeric backend: level " + std::to_string(d) + " gave no consistent count after " +
                     std::to_string(budget) + " attempts");
}

ResidualDegrees residual_degrees_numeric(const std::vector<Polynomial<Complex>>& gens, int k, int m, Rng& rng,
                                         const TrackerConfig& cfg, std::vector<LevelReport>* reports) {
  if (gens.empty()) throw std::invalid_argument("residual_degrees_numeric: no generators");
  const int n = gens.front().ring()->ambient_dim();
  if (k < 0 || k >= n) throw std::invalid_argument("residual_degrees_numeric: dimension out of range");
  ResidualDegrees out{n, k, m, {}};
  for (int d = n - k; d <= n; ++d) {
    auto rep = count_non_solutions(gens, d, m, rng, cfg);
    out.degrees.push_back(static_cast<std::int64_t>(rep.non_solutions));
    if (reports) reports->push_back(rep);
  }
  return out;
}

std::optional<Rational> rational_reconstruct(const Fp& a) {
  using I = std::int64_t;
  const I p = a.p;
  const I bound = static_cast<I>(std::sqrt(static_cast<double>(p) / 2.0));
  I r0 = p, r1 = a.v, t0 = 0, t1 = 1;
  while (r1 > bound) {
    I q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (t1 == 0 || std::abs(t1) > bound) return std::nullopt;
  if (t1 < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  return Rational(BigInt(r1), BigInt(t1));
}

}  // namespace charclass
