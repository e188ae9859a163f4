#pragma once

// Exponential loss, the softmax potential over a V-polytope, near-minimizer
// certificates, and the Frank-Wolfe / multiplicative-weights solvers.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lexopt/core.hpp"
#include "lexopt/filling.hpp"
#include "lexopt/setrep.hpp"

namespace lexopt {

/// L = mantissa * exp(log_scale), with log_scale = -c * min_i x_i and
/// mantissa in [1, n].
struct ScaledLoss {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double log() const;
  /// exp(log()); throws Overflow when that is not representable.
  double value() const;
};

ScaledLoss exp_loss_scaled(std::span<const double> x, double c);

/// sum_i exp(-c x_i). Throws Overflow instead of returning inf.
double exp_loss(const Point& x, double c);

/// a < b, comparing mantissas directly when the scales agree.
bool loss_less(const ScaledLoss& a, const ScaledLoss& b);

struct LossParams {
  double c = 1.0;
  double gamma = 0.0;

  void validate() const;
};

/// gamma * exp(-c * norm_bound).
double near_min_threshold(double c, double gamma, double norm_bound);

/// (1/c) log sum_i exp(-c (Mq)_i).
double softmax_potential(const VPolytope& poly, std::span<const double> q, double c);

/// softmax(-c Mq) over rows: the distribution that weights the gradient.
std::vector<double> row_distribution(const VPolytope& poly, std::span<const double> q,
                                     double c);

/// Gradient of the softmax potential in q: -(M^T p) with p = row_distribution.
std::vector<double> softmax_gradient(const VPolytope& poly, std::span<const double> q,
                                     double c);

struct PathMinimum {
  Point x;
  std::size_t segment = 0;
  double lambda = 0.0;
  ScaledLoss loss;
};

/// Global minimizer of L_c over a path: per segment, bisection on the sign of
/// the derivative (the loss is convex along each segment), plus both endpoints.
PathMinimum path_minimizer(const PolyPath& path, double c);
Point minimize_on_path(const PolyPath& path, double c);

/// Index of the smallest loss; ties go to the lowest index.
std::size_t argmin_loss(std::span<const Point> points, double c);
Point minimize_on_finite(const FiniteSet& set, double c);

enum class Schedule { constant, c_over_t, frank_wolfe };

std::string to_string(Schedule s);

/// How the first Frank-Wolfe direction is formed. `uniform_weights` starts
/// from the uniform average over columns. `uniform_p` takes the first
/// direction from the uniform distribution over rows, which is the round-1
/// state of multiplicative weights.
enum class FwStart { uniform_weights, uniform_p };

struct SolverRun {
  Schedule schedule = Schedule::frank_wolfe;
  double param = 0.0;  // c for Frank-Wolfe and c/t, eta for constant
  std::vector<std::size_t> vertices;           // column chosen at round t
  std::vector<std::vector<double>> q_iterates;  // q_t (simplex vertices)
  std::vector<std::vector<double>> p_iterates;  // row distribution used at round t
  std::vector<std::vector<double>> q_averages;  // running mean after round t
  std::vector<double> p_average;
  std::vector<double> gap_history;  // H(qbar_t) minus the best linear lower bound so far

  const std::vector<double>& q_average() const { return q_averages.back(); }
  std::size_t rounds() const { return vertices.size(); }
};

SolverRun frank_wolfe(const VPolytope& poly, double c, std::size_t T,
                      FwStart start = FwStart::uniform_weights);

/// `param` is eta for Schedule::constant and c for Schedule::c_over_t.
SolverRun multiplicative_weights(const VPolytope& poly, Schedule schedule, double param,
                                 std::size_t T);

/// Losses are plain values (they may underflow to 0 for huge c); the verdict
/// itself is computed in shifted form.
struct NearMinCert {
  Point x;
  double loss = 0.0;
  double inf_estimate = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Infimum of L_c over the set, realized by a point of it: exact on finite
/// sets and paths; on polytopes the better of the grid argmin and a
/// Frank-Wolfe run; on the curved set the grid argmin.
Point loss_infimum_point(const GroundSet& set, double c, const SolveBudget& budget);

NearMinCert certify_near_min(const GroundSet& set, const Point& x, const LossParams& params,
                             const SolveBudget& budget);

/// A concrete x_{c,gamma}. Where the infimum is realized exactly this is the
/// minimizer itself; on polytopes Frank-Wolfe runs until its certified gap is
/// below the threshold or `max_rounds` is reached.
Point near_minimizer(const GroundSet& set, const LossParams& params,
                     const SolveBudget& budget, std::size_t max_rounds = 20000);

}  // namespace lexopt
