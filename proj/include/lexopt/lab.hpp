#pragma once

// Catalogued sets, the closeness predicates, and the stability and
// convergence experiment drivers.

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lexopt/core.hpp"
#include "lexopt/expmin.hpp"
#include "lexopt/filling.hpp"
#include "lexopt/setrep.hpp"

namespace lexopt {

struct SharpLowerPoints {
  Point x_star;    // (0,...,0,1)
  Point x_prime;   // (0,...,0,1/2)
  Point x_dprime;  // (-1/2, 1/4 x (n-2), 1/2)
};

SharpLowerPoints sharp_lower_points(std::size_t n);

/// Path with vertices x'', x', x*, so the "bad" segment comes first.
PolyPath make_sharp_lower_set(std::size_t n);

/// (2 beta - 1) / (exp(a beta) + 1) with beta = 2/3.
double rate_segment_eps(double a);

struct RateSegmentPoints {
  Point x_star;   // (eps x (k-1), 1 x (n-k+1))
  Point x_prime;  // (0, eps x (k-3), beta, beta, 1 x (n-k))
  double eps;
};

RateSegmentPoints rate_segment_points(std::size_t n, std::size_t k, double a);

/// Single segment from x' to x*.
PolyPath make_rate_segment(std::size_t n, std::size_t k, double a);

/// {(10,1,1), (10-eps, 1-eps, 1-eps), (5, 5, 1-eps)}.
FiniteSet make_hartman_set(double eps);

/// {(5,2,4), (2,6,3), (8,7,1)}.
FiniteSet intro_set();

/// (-eps^2, eps/2, 3/4), an eps-admissible point of the curved set.
Point curved_witness(double eps);
Point curved_lexmax();

/// Generators uniform in [-1,1]^m.
VPolytope random_polytope(std::mt19937_64& rng, std::size_t m, std::size_t cols);

/// `count` distinct points uniform in [-1,1]^n.
FiniteSet random_finite_set(std::mt19937_64& rng, std::size_t n, std::size_t count);

/// distortion(x_star, x) <= eps (to 1e-12).
bool close_ours(const Point& x, const Point& x_star, double eps);

/// No y in the set beats x by more than eps at the first index where it
/// moves sigma upward while holding all earlier indices.
bool close_hartman(const Point& x, const FiniteSet& set, double eps);

struct ClosenessVerdict {
  bool ours;
  bool hartman;
};

ClosenessVerdict closeness(const Point& x, const Point& x_star, const FiniteSet& set,
                           double eps);

enum class Relation { none, at_least, at_most };

/// One cell of an experiment. Fields that do not apply are NaN.
struct ExperimentRecord {
  std::string set;
  double n = 0;
  double k = 0;
  double a = 0;
  double c = 0;
  double eps = 0;
  double gamma = 0;
  double d_total = 0;
  double d_k = 0;
  double bound = 0;
  bool pass = true;
  double slack = 0;
  Relation relation = Relation::none;
};

/// Sets `pass` from d_k, bound, relation, and `allowance` (added on the
/// lenient side), at tolerance 1e-9.
void settle(ExperimentRecord& r, double allowance = 0.0);

struct StabilityOptions {
  std::string name = "set";
  std::optional<Point> x_star;   // computed by filling with the budget if absent
  std::vector<Point> witnesses;  // extra candidates checked for admissibility
  std::size_t k = 0;             // index for d_k; 0 means n
  /// Expected lower bound on the distortion (instability certificate), if any.
  std::optional<double> at_least;
};

/// Per eps: the largest distortion from x* over certified eps-admissible
/// points, found by an adversarial fill, the admissible grid points, and the
/// witnesses.
std::vector<ExperimentRecord> stability_curve(const GroundSet& set,
                                              const std::vector<double>& eps_list,
                                              const SolveBudget& budget,
                                              const StabilityOptions& options = {});

enum class BoundKind {
  upper_log_ratio,  // d_k <= (1/c) log((n-k+1)/(1-gamma))
  rate_lower,       // d_k >= (1/3) min{1, a/c}
  sharp_lower,      // d_k >= 1/2
};

struct ConvergenceOptions {
  std::string name = "set";
  std::optional<Point> x_star;
  std::size_t k = 0;  // 0 means n
  BoundKind bound = BoundKind::upper_log_ratio;
  double a = std::numeric_limits<double>::quiet_NaN();
};

double convergence_bound(BoundKind kind, std::size_t n, std::size_t k, double c,
                         double gamma, double a);

std::vector<ExperimentRecord> convergence_curve(const GroundSet& set,
                                                const std::vector<double>& c_list,
                                                double gamma, const SolveBudget& budget,
                                                const ConvergenceOptions& options = {});

}  // namespace lexopt
