#ifndef CHARCLASS_HOMOTOPY_HPP
#define CHARCLASS_HOMOTOPY_HPP

// Numeric residual degrees. For each level d the square system
// [f_1..f_d, L_{d+1}..L_n] is solved on a random affine patch by a
// total-degree homotopy with the gamma trick; converged nonsingular endpoints
// off V(I) are the non-solutions, and their number is deg(R_d).

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "charclass/error.hpp"
#include "charclass/polynomial.hpp"
#include "charclass/ideal.hpp"
#include "charclass/segre.hpp"

namespace charclass {

using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

struct TrackerConfig {
  double corrector_tol = 1e-10;
  double on_variety_tol = 1e-8;
  int max_step_halvings = 40;
  int max_newton_iters = 3;
  double cluster_tol = 1e-6;
  std::uint64_t seed = 0;

  /// Newton acceptance while tracking; corrector_tol applies at t = 0.
  double tracking_tol = 1e-7;
  double initial_step = 0.02;
  double max_step = 0.1;
  /// Endpoints whose Jacobian condition number exceeds this are singular.
  double condition_limit = 1e8;
  /// Affine coordinates beyond this norm count as diverged.
  double divergence_norm = 1e7;
  int max_steps = 100000;
  /// Paths that stall below this t get a Newton attempt at t = 0.
  double stall_endgame = 1e-3;
  int level_retries = 3;
  /// Accept a level only once two independent draws give the same count.
  bool confirm = true;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

enum class PathStatus { converged, diverged, singular };
enum class EndpointClass { solution, non_solution, unclassified };

struct PathEndpoint {
  ComplexVector point;  // affine chart coordinates
  PathStatus status = PathStatus::diverged;
  double residual = 0.0;  // scaled residual on the ideal, when classified
  double condition = 0.0;
  EndpointClass classification = EndpointClass::unclassified;
};

/// Square polynomial system in affine coordinates with value and Jacobian
/// evaluation.
class PolySystem {
 public:
  PolySystem() = default;
  explicit PolySystem(std::vector<Polynomial<Complex>> polys);

  int size() const { return static_cast<int>(polys_.size()); }
  int nvars() const { return nvars_; }
  const std::vector<Polynomial<Complex>>& polys() const { return polys_; }
  std::vector<int> degrees() const;

  ComplexVector values(const ComplexVector& z) const;
  ComplexMatrix jacobian(const ComplexVector& z) const;

 private:
  struct Flat {
    std::vector<Complex> coeff;
    std::vector<std::array<std::uint16_t, kMaxVars>> exps;
  };
  std::vector<Polynomial<Complex>> polys_;
  std::vector<Flat> flat_;
  int nvars_ = 0;
  int max_exp_ = 0;
};

/// H(z, t) = (1 - t) F(z) + t γ G(z); t runs from 1 (start) to 0 (target).
class Homotopy {
 public:
  Homotopy(PolySystem target, PolySystem start, Complex gamma);

  ComplexVector values(const ComplexVector& z, double t) const;
  ComplexMatrix jacobian(const ComplexVector& z, double t) const;
  /// dH/dt
  ComplexVector dt(const ComplexVector& z) const;

  const PolySystem& target() const { return target_; }
  const PolySystem& start() const { return start_; }

 private:
  PolySystem target_;
  PolySystem start_;
  Complex gamma_;
};

/// Total-degree start system z_i^{d_i} - 1 and its solutions.
PolySystem total_degree_start_system(const std::vector<int>& degrees);
std::vector<ComplexVector> total_degree_start_points(const std::vector<int>& degrees);

/// Euler predictor, Newton corrector, adaptive step from t = 1 to t = 0,
/// then Newton refinement at t = 0. Step underflow gives `diverged`; an
/// ill-conditioned final Jacobian gives `singular`.
PathEndpoint track_path(const ComplexVector& start, const Homotopy& h, const TrackerConfig& cfg);

/// Max over generators of |h(u)| / |grad h(u)| at u = x / ||x||, a first-order
/// estimate of the distance to V(h).
double scaled_residual(const std::vector<Polynomial<Complex>>& ideal, const ComplexVector& homogeneous_point);

/// Outcome of classifying one converged endpoint; ambiguous residuals (within
/// a factor 10 of the tolerance) request a rerun of the level.
struct Classification {
  EndpointClass value = EndpointClass::unclassified;
  bool ambiguous = false;
};

Classification classify_endpoint(const ComplexVector& homogeneous_point, const std::vector<Polynomial<Complex>>& ideal,
                                 double jacobian_condition, const TrackerConfig& cfg);

/// Non-solution count for one level; throws NumericError on persistent
/// failure.
struct LevelReport {
  int level = 0;
  std::size_t paths = 0;
  std::size_t converged = 0;
  std::size_t solutions = 0;
  std::size_t non_solutions = 0;
  std::size_t singular = 0;
  std::size_t diverged = 0;
  int attempts = 0;
};

/// Residual degrees from homotopy continuation over C. `generators` span the
/// ideal of X (complex coefficients), k = dim X, m the element degree.
ResidualDegrees residual_degrees_numeric(const std::vector<Polynomial<Complex>>& generators, int k, int m, Rng& rng,
                                         const TrackerConfig& cfg, std::vector<LevelReport>* reports = nullptr);

LevelReport count_non_solutions(const std::vector<Polynomial<Complex>>& generators, int d, int m, Rng& rng,
                                const TrackerConfig& cfg);

/// Smallest-denominator rational with the given residue (p ~ 2^30 recovers
/// numerators and denominators up to ~2^15).
std::optional<Rational> rational_reconstruct(const Fp& a);

inline Complex to_complex(const Rational& q) {
  return {boost::multiprecision::numerator(q).convert_to<double>() /
              boost::multiprecision::denominator(q).convert_to<double>(),
          0.0};
}

/// Exact polynomial to complex coefficients; over F_p via rational
/// reconstruction.
template <class K>
Polynomial<Complex> to_complex(const Polynomial<K>& f, const RingPtr<Complex>& ring) {
  return map_coefficients(f, ring, [](const K& c) -> Complex {
    if constexpr (std::is_same_v<K, Fp>) {
      auto q = rational_reconstruct(c);
      if (!q) throw NumericError("numeric backend: coefficient " + to_string(c) + " has no small rational lift");
      return to_complex(*q);
    } else if constexpr (std::is_same_v<K, Rational>) {
      return to_complex(c);
    } else {
      return Complex(c);
    }
  });
}

template <class K>
ResidualDegrees residual_degrees_numeric(const Ideal<K>& I, Rng& rng, const TrackerConfig& cfg, int m = 0) {
  auto stats = I.stats();
  if (stats.empty()) throw DomainError("residual degrees: the scheme is empty");
  if (m == 0) m = I.max_degree();
  if (m < I.max_degree()) throw std::invalid_argument("residual degrees: degree bound below a generator degree");
  auto cring = make_ring<Complex>(I.ring()->names(), Field<Complex>{});
  std::vector<Polynomial<Complex>> gens;
  for (const auto& g : I.generators()) gens.push_back(to_complex(g, cring));
  if (gens.empty()) {
    ResidualDegrees out{I.ring()->ambient_dim(), I.ring()->ambient_dim(), 0, {}};
    out.degrees.assign(out.n + 1, 0);
    return out;
  }
  return residual_degrees_numeric(gens, stats.dim, m, rng, cfg);
}

}  // namespace charclass

#endif  // CHARCLASS_HOMOTOPY_HPP
