#pragma once

// Progressive filling with tolerance eps, the per-round sup functions H_k and
// G_I, and the possible-output test built on them.

#include <cstddef>
#include <optional>
#include <vector>

#include "lexopt/core.hpp"
#include "lexopt/setrep.hpp"

namespace lexopt {

/// Grid resolution plus local refinement effort for the inner problems.
struct SolveBudget {
  std::size_t resolution = 64;
  std::size_t refine_iters = 60;
  std::size_t cap = kDefaultGridCap;

  /// Budget whose grid slack is at most eps / 2 on `set`. Throws
  /// BudgetExceeded for eps = 0 on a continuous set, or if the grid is larger
  /// than `cap`.
  static SolveBudget for_tolerance(const GroundSet& set, double eps,
                                   std::size_t cap = kDefaultGridCap);
};

enum class Selector {
  best,         // maximize sigma_k
  adversarial,  // among eps-admissible candidates, minimize sigma_n
  target,       // among eps-admissible candidates, the one nearest a target point
};

struct InnerProblem {
  std::size_t k = 1;
  std::vector<double> floor;  // sigma_i(x^(k-1)) for i < k
  GroundSet set;
};

struct InnerResult {
  Point x;
  double sup_estimate;
};

/// A discretized ground set, stored flat: every candidate's coordinates, its
/// sorted view, and its lattice parameter (empty for appended extras).
class SampledSet {
 public:
  SampledSet(const GroundSet& set, std::size_t resolution,
             std::size_t cap = kDefaultGridCap);

  /// Exact sample of a finite set (slack 0).
  explicit SampledSet(const FiniteSet& set);

  std::size_t size() const { return count_; }
  std::size_t dim() const { return dim_; }
  double slack() const { return slack_; }
  std::size_t resolution() const { return resolution_; }
  const GroundSet& set() const { return set_; }

  std::span<const double> coords(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> sorted(std::size_t i) const {
    return {sorted_.data() + i * dim_, dim_};
  }
  /// Lattice parameter of grid point i; empty for appended candidates.
  std::span<const double> param(std::size_t i) const;
  Point point(std::size_t i) const { return Point(coords(i)); }

  /// Appends an extra candidate and returns its index.
  std::size_t add(std::span<const double> x);

 private:
  void push(std::span<const double> x, std::span<const double> param);

  GroundSet set_;
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::size_t grid_count_ = 0;
  std::size_t param_dim_ = 0;
  std::size_t resolution_ = 0;
  double slack_ = 0.0;
  std::vector<double> coords_;
  std::vector<double> sorted_;
  std::vector<double> params_;
};

struct FillTrace {
  std::vector<Point> iterates;       // x^(1) .. x^(n)
  std::vector<double> inner_values;  // sigma_k(x^(k))
  std::vector<double> inner_sups;    // estimated round sup
  double epsilon = 0.0;
  double slack = 0.0;  // grid slack; the output lies in A(X, epsilon + slack)
};

InnerResult solve_inner(const InnerProblem& p, double eps, const SolveBudget& budget,
                        Selector selector = Selector::best);

/// Inner round on an already sampled set. `target` is used only by
/// Selector::target.
InnerResult solve_inner(SampledSet& sample, std::size_t k, std::span<const double> floor,
                        double eps, std::size_t refine_iters, Selector selector,
                        const std::optional<Point>& target = std::nullopt);

FillTrace run_fill(const GroundSet& set, double eps, const SolveBudget& budget,
                   Selector selector = Selector::best,
                   const std::optional<Point>& target = std::nullopt);

/// H_k(x): sup of sigma_k(z) over candidates z with sigma_i(z) >= sigma_i(x)
/// for i < k. Exact for finite sets; a grid estimate (never above the true
/// value) otherwise.
double H_k(const GroundSet& set, const Point& x, std::size_t k, const SolveBudget& budget);
double H_k(const SampledSet& sample, std::span<const double> x_sorted, std::size_t k,
           double tol = kTol);

/// G_I(x): sup over candidates z agreeing with x on the coordinates in I
/// (within 1e-9) of the smallest remaining coordinate of z. Returns -infinity
/// when nothing matches. I holds 1-based coordinate indices and must be a
/// proper subset of [n].
double G_I(const GroundSet& set, const Point& x, const IndexSet& I, const SolveBudget& budget);
double G_I(const SampledSet& sample, std::span<const double> x, const IndexSet& I);

/// sigma_k(x) >= H_k(x) - eps for all k. Throws InvalidArgument if x is not in set.
bool is_possible_output(const GroundSet& set, const Point& x, double eps,
                        const SolveBudget& budget);

/// Indices of the sample's candidates that pass the possible-output test
/// against the sample itself. Comparisons use `tol`.
std::vector<std::size_t> admissible_indices(const SampledSet& sample, double eps,
                                            double tol = kTol);

/// Exact possible-output filter of a finite set (no tolerance at all).
FiniteSet possible_output_set(const FiniteSet& set, double eps);
FiniteSet possible_output_set(const GroundSet& set, double eps);

}  // namespace lexopt
