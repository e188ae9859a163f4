#include "lexopt/filling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lexopt/detail/golden.hpp"

namespace lexopt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMatchTol = 1e-9;

std::size_t param_width(const GroundSet& set) {
  if (std::holds_alternative<FiniteSet>(set)) return 1;
  if (std::holds_alternative<PolyPath>(set)) return 2;
  if (const auto* poly = std::get_if<VPolytope>(&set)) return poly->cols();
  return 3;
}

bool meets_floor(std::span<const double> sorted, std::span<const double> floor,
                 double tol) {
  for (std::size_t j = 0; j < floor.size(); ++j) {
    if (sorted[j] < floor[j] - tol) return false;
  }
  return true;
}

double comparison_tol(const GroundSet& set) {
  return std::holds_alternative<FiniteSet>(set) ? 0.0 : kTol;
}

// Value of round k at a trial point: sigma_k if the floor holds, else -inf.
double round_value(std::span<const double> x, std::size_t k,
                   std::span<const double> floor) {
  const auto s = sorted_values(x);
  if (!meets_floor(s, floor, kTol)) return kNegInf;
  return s[k - 1];
}

// Local golden-section refinement around a grid candidate. Returns a better
// point, if one was found.
std::optional<std::vector<double>> refine(const SampledSet& sample, std::size_t idx,
                                          std::size_t k, std::span<const double> floor,
                                          std::size_t iters) {
  const auto param = sample.param(idx);
  if (param.empty() || iters == 0) return std::nullopt;
  const double step = 1.0 / static_cast<double>(sample.resolution());
  double best = sample.sorted(idx)[k - 1];
  std::optional<std::vector<double>> out;

  if (const auto* path = std::get_if<PolyPath>(&sample.set())) {
    const auto seg = static_cast<std::size_t>(param[0]);
    const double lo = std::max(0.0, param[1] - step);
    const double hi = std::min(1.0, param[1] + step);
    auto at = [&](double lambda) {
      return path_point(*path, seg, std::clamp(lambda, 0.0, 1.0)).values();
    };
    const double lambda = detail::golden_section_min(
        [&](double l) { return -round_value(at(l), k, floor); }, lo, hi, kTol, iters);
    auto x = at(lambda);
    if (round_value(x, k, floor) > best + kTol) out = std::move(x);
    return out;
  }

  const auto* poly = std::get_if<VPolytope>(&sample.set());
  if (poly == nullptr) return std::nullopt;
  std::vector<double> q(param.begin(), param.end());
  const std::size_t nc = q.size();
  auto image = [&](const std::vector<double>& w) {
    std::vector<double> x(poly->rows(), 0.0);
    for (std::size_t c = 0; c < nc; ++c) {
      if (w[c] == 0.0) continue;
      for (std::size_t r = 0; r < poly->rows(); ++r) x[r] += w[c] * poly->at(r, c);
    }
    return x;
  };
  bool improved = false;
  for (std::size_t a = 0; a < nc; ++a) {
    for (std::size_t b = 0; b < nc; ++b) {
      if (a == b) continue;
      // Move weight from column b to column a by t in [-min(q_a, step), min(q_b, step)].
      const double lo = -std::min(q[a], step);
      const double hi = std::min(q[b], step);
      if (hi - lo <= kTol) continue;
      auto shifted = [&](double t) {
        auto w = q;
        w[a] = std::max(0.0, w[a] + t);
        w[b] = std::max(0.0, w[b] - t);
        return w;
      };
      const double t = detail::golden_section_min(
          [&](double s) { return -round_value(image(shifted(s)), k, floor); }, lo, hi,
          kTol, iters);
      auto w = shifted(t);
      const double v = round_value(image(w), k, floor);
      if (v > best + kTol) {
        best = v;
        q = std::move(w);
        improved = true;
      }
    }
  }
  if (improved) out = image(q);
  return out;
}

}  // namespace

SolveBudget SolveBudget::for_tolerance(const GroundSet& set, double eps,
                                       std::size_t cap) {
  SolveBudget budget;
  budget.cap = cap;
  if (std::holds_alternative<FiniteSet>(set)) {
    budget.resolution = 1;
    return budget;
  }
  if (!(eps > 0.0)) {
    throw BudgetExceeded("eps = 0 cannot be certified on a continuous set");
  }
  budget.resolution = resolution_for_spacing(set, eps / 6.0);
  const std::size_t size = grid_size(set, budget.resolution);
  if (size > cap) {
    throw BudgetExceeded("eps " + std::to_string(eps) + " needs " + std::to_string(size) +
                         " grid points, above the cap of " + std::to_string(cap));
  }
  return budget;
}

SampledSet::SampledSet(const GroundSet& set, std::size_t resolution, std::size_t cap)
    : set_(set), dim_(dimension(set)), param_dim_(param_width(set)),
      resolution_(resolution) {
  if (resolution == 0) throw InvalidArgument("grid resolution must be positive");
  const std::size_t size = grid_size(set, resolution);
  if (size > cap) {
    throw BudgetExceeded("grid of " + std::to_string(size) +
                         " points exceeds the cap of " + std::to_string(cap));
  }
  slack_ = grid_slack(set, resolution);
  coords_.reserve(size * dim_);
  sorted_.reserve(size * dim_);
  params_.reserve(size * param_dim_);
  for_each_grid_point(set, resolution, [&](std::span<const double> x,
                                           std::span<const double> param) {
    push(x, param);
  });
  grid_count_ = count_;
}

SampledSet::SampledSet(const FiniteSet& set) : SampledSet(GroundSet(set), 1) {}

std::span<const double> SampledSet::param(std::size_t i) const {
  if (i >= grid_count_) return {};
  return {params_.data() + i * param_dim_, param_dim_};
}

void SampledSet::push(std::span<const double> x, std::span<const double> param) {
  coords_.insert(coords_.end(), x.begin(), x.end());
  const auto s = sorted_values(x);
  sorted_.insert(sorted_.end(), s.begin(), s.end());
  params_.insert(params_.end(), param.begin(), param.end());
  ++count_;
}

std::size_t SampledSet::add(std::span<const double> x) {
  if (x.size() != dim_) throw DimensionMismatch("candidate dimension differs from set");
  coords_.insert(coords_.end(), x.begin(), x.end());
  const auto s = sorted_values(x);
  sorted_.insert(sorted_.end(), s.begin(), s.end());
  return count_++;
}

InnerResult solve_inner(SampledSet& sample, std::size_t k, std::span<const double> floor,
                        double eps, std::size_t refine_iters, Selector selector,
                        const std::optional<Point>& target) {
  const std::size_t n = sample.dim();
  if (k < 1 || k > n) throw IndexOutOfRange("round index outside [1, n]");
  if (floor.size() + 1 != k) throw InvalidArgument("floor must hold k - 1 values");
  if (!(eps >= 0.0)) throw InvalidArgument("eps must be nonnegative");
  const double tol = comparison_tol(sample.set());

  std::size_t best = sample.size();
  double sup = kNegInf;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto s = sample.sorted(i);
    if (s[k - 1] > sup && meets_floor(s, floor, tol)) {
      sup = s[k - 1];
      best = i;
    }
  }
  if (best == sample.size()) {
    throw Infeasible("no candidate satisfies the round " + std::to_string(k) + " floor");
  }
  if (auto better = refine(sample, best, k, floor, refine_iters)) {
    best = sample.add(*better);
    sup = sample.sorted(best)[k - 1];
  }

  std::size_t chosen = best;
  if (selector != Selector::best) {
    if (selector == Selector::target && !target) {
      throw InvalidArgument("target selector needs a target point");
    }
    double score = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const auto s = sample.sorted(i);
      if (s[k - 1] < sup - eps - tol || !meets_floor(s, floor, tol)) continue;
      const double v = selector == Selector::adversarial
                           ? s[n - 1]
                           : linf_distance(sample.coords(i), target->coords());
      if (v < score) {
        score = v;
        chosen = i;
      }
    }
  }
  return {sample.point(chosen), sup};
}

InnerResult solve_inner(const InnerProblem& p, double eps, const SolveBudget& budget,
                        Selector selector) {
  if (selector == Selector::target) {
    throw InvalidArgument("target selection is only available through run_fill");
  }
  SampledSet sample(p.set, budget.resolution, budget.cap);
  return solve_inner(sample, p.k, p.floor, eps, budget.refine_iters, selector);
}

FillTrace run_fill(const GroundSet& set, double eps, const SolveBudget& budget,
                   Selector selector, const std::optional<Point>& target) {
  if (!(eps >= 0.0)) throw InvalidArgument("eps must be nonnegative");
  SampledSet sample(set, budget.resolution, budget.cap);
  if (target) {
    if (!contains(set, *target)) {
      throw InvalidArgument("target " + to_string(*target) + " is not in the set");
    }
    sample.add(target->coords());
  }
  FillTrace trace;
  trace.epsilon = eps;
  trace.slack = sample.slack();
  std::vector<double> floor;
  for (std::size_t k = 1; k <= sample.dim(); ++k) {
    // The previous iterate keeps every later round feasible.
    if (k > 1) sample.add(trace.iterates.back().coords());
    auto res = solve_inner(sample, k, floor, eps, budget.refine_iters, selector, target);
    const auto s = sorted_values(res.x.coords());
    trace.inner_values.push_back(s[k - 1]);
    trace.inner_sups.push_back(res.sup_estimate);
    trace.iterates.push_back(std::move(res.x));
    floor.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return trace;
}

double H_k(const SampledSet& sample, std::span<const double> x_sorted, std::size_t k,
           double tol) {
  if (k < 1 || k > sample.dim()) throw IndexOutOfRange("H_k index outside [1, n]");
  const auto floor = x_sorted.first(k - 1);
  double sup = kNegInf;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto s = sample.sorted(i);
    if (s[k - 1] > sup && meets_floor(s, floor, tol)) sup = s[k - 1];
  }
  return sup;
}

double H_k(const GroundSet& set, const Point& x, std::size_t k, const SolveBudget& budget) {
  if (x.dim() != dimension(set)) throw DimensionMismatch("point and set differ in dimension");
  SampledSet sample(set, budget.resolution, budget.cap);
  sample.add(x.coords());
  return H_k(sample, sorted_values(x.coords()), k, comparison_tol(set));
}

double G_I(const SampledSet& sample, std::span<const double> x, const IndexSet& I) {
  const std::size_t n = sample.dim();
  if (x.size() != n) throw DimensionMismatch("point and set differ in dimension");
  if (I.max() > n) throw IndexOutOfRange("G_I index exceeds dimension");
  if (I.members().size() >= n) throw InvalidArgument("G_I needs a proper subset of [n]");
  double sup = kNegInf;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto z = sample.coords(i);
    bool match = true;
    double rest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n && match; ++j) {
      if (I.contains(j + 1)) {
        match = std::abs(z[j] - x[j]) <= kMatchTol;
      } else {
        rest = std::min(rest, z[j]);
      }
    }
    if (match) sup = std::max(sup, rest);
  }
  return sup;
}

double G_I(const GroundSet& set, const Point& x, const IndexSet& I,
           const SolveBudget& budget) {
  SampledSet sample(set, budget.resolution, budget.cap);
  if (x.dim() != sample.dim()) throw DimensionMismatch("point and set differ in dimension");
  sample.add(x.coords());
  return G_I(sample, x.coords(), I);
}

bool is_possible_output(const GroundSet& set, const Point& x, double eps,
                        const SolveBudget& budget) {
  if (!contains(set, x)) throw InvalidArgument(to_string(x) + " is not in the set");
  SampledSet sample(set, budget.resolution, budget.cap);
  sample.add(x.coords());
  const double tol = comparison_tol(set);
  const auto s = sorted_values(x.coords());
  for (std::size_t k = 1; k <= s.size(); ++k) {
    if (s[k - 1] < H_k(sample, s, k, tol) - eps - tol) return false;
  }
  return true;
}

std::vector<std::size_t> admissible_indices(const SampledSet& sample, double eps,
                                            double tol) {
  const std::size_t n = sample.dim();
  const std::size_t count = sample.size();
  double top = kNegInf;
  for (std::size_t i = 0; i < count; ++i) top = std::max(top, sample.sorted(i)[0]);
  std::vector<std::size_t> alive;
  for (std::size_t i = 0; i < count; ++i) {
    if (sample.sorted(i)[0] >= top - eps - tol) alive.push_back(i);
  }
  std::vector<std::size_t> order(count);
  for (std::size_t k = 2; k <= n && !alive.empty(); ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return sample.sorted(a)[k - 1] > sample.sorted(b)[k - 1];
    });
    std::vector<std::size_t> next;
    for (std::size_t x : alive) {
      const auto sx = sample.sorted(x);
      const double pass_level = sx[k - 1] + eps + tol;
      const auto floor = sx.first(k - 1);
      bool pass = false;
      for (std::size_t z : order) {
        const auto sz = sample.sorted(z);
        if (sz[k - 1] <= pass_level) {
          pass = true;
          break;
        }
        if (meets_floor(sz, floor, tol)) break;
      }
      if (pass) next.push_back(x);
    }
    alive = std::move(next);
  }
  return alive;
}

FiniteSet possible_output_set(const FiniteSet& set, double eps) {
  if (!(eps >= 0.0)) throw InvalidArgument("eps must be nonnegative");
  const SampledSet sample(set);
  std::vector<Point> out;
  for (std::size_t i : admissible_indices(sample, eps, 0.0)) out.push_back(sample.point(i));
  return FiniteSet(std::move(out));
}

FiniteSet possible_output_set(const GroundSet& set, double eps) {
  const auto* finite = std::get_if<FiniteSet>(&set);
  if (finite == nullptr) {
    throw InvalidArgument("possible_output_set needs a finite representation");
  }
  return possible_output_set(*finite, eps);
}

}  // namespace lexopt
