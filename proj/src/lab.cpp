#include "lexopt/lab.hpp"

#include <algorithm>
#include <cmath>

namespace lexopt {

namespace {

constexpr double kBeta = 2.0 / 3.0;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRecordTol = 1e-9;

std::vector<double> repeat(double v, std::size_t count) { return std::vector<double>(count, v); }

void append(std::vector<double>& out, const std::vector<double>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

bool exact_set(const GroundSet& set) {
  return std::holds_alternative<FiniteSet>(set) || std::holds_alternative<PolyPath>(set);
}

}  // namespace

SharpLowerPoints sharp_lower_points(std::size_t n) {
  if (n < 8) throw InvalidArgument("the sharp lower bound construction needs n >= 8");
  auto star = repeat(0.0, n);
  star[n - 1] = 1.0;
  auto prime = repeat(0.0, n);
  prime[n - 1] = 0.5;
  auto dprime = repeat(0.25, n);
  dprime[0] = -0.5;
  dprime[n - 1] = 0.5;
  return {Point(std::move(star)), Point(std::move(prime)), Point(std::move(dprime))};
}

PolyPath make_sharp_lower_set(std::size_t n) {
  auto pts = sharp_lower_points(n);
  return PolyPath({pts.x_dprime, pts.x_prime, pts.x_star});
}

double rate_segment_eps(double a) {
  if (!(a >= 1.0) || !std::isfinite(a)) throw InvalidArgument("a must be at least 1");
  const double eps = (2.0 * kBeta - 1.0) / (std::exp(a * kBeta) + 1.0);
  if (!(eps > 0.0 && eps <= 0.125)) throw InvalidArgument("eps left (0, 1/8]");
  return eps;
}

RateSegmentPoints rate_segment_points(std::size_t n, std::size_t k, double a) {
  if (k < 3 || k > n) throw InvalidArgument("rate segment needs 3 <= k <= n");
  const double eps = rate_segment_eps(a);
  auto star = repeat(eps, k - 1);
  append(star, repeat(1.0, n - k + 1));
  std::vector<double> prime{0.0};
  append(prime, repeat(eps, k - 3));
  append(prime, {kBeta, kBeta});
  append(prime, repeat(1.0, n - k));
  return {Point(std::move(star)), Point(std::move(prime)), eps};
}

PolyPath make_rate_segment(std::size_t n, std::size_t k, double a) {
  auto pts = rate_segment_points(n, k, a);
  return PolyPath({pts.x_prime, pts.x_star});
}

FiniteSet make_hartman_set(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  return FiniteSet{Point{10.0, 1.0, 1.0}, Point{10.0 - eps, 1.0 - eps, 1.0 - eps},
                   Point{5.0, 5.0, 1.0 - eps}};
}

FiniteSet intro_set() {
  return FiniteSet{Point{5.0, 2.0, 4.0}, Point{2.0, 6.0, 3.0}, Point{8.0, 7.0, 1.0}};
}

Point curved_witness(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  return Point{-eps * eps, eps / 2.0, 0.75};
}

Point curved_lexmax() { return Point{0.0, 0.0, 1.0}; }

VPolytope random_polytope(std::mt19937_64& rng, std::size_t m, std::size_t cols) {
  if (m == 0 || cols == 0) throw InvalidArgument("polytope needs m, cols >= 1");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> columns;
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<double> v(m);
    for (double& x : v) x = u(rng);
    columns.emplace_back(std::move(v));
  }
  return VPolytope(std::move(columns));
}

FiniteSet random_finite_set(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  if (n == 0 || count == 0) throw InvalidArgument("finite set needs n, count >= 1");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts;
  while (pts.size() < count) {
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    Point p(std::move(v));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return FiniteSet(std::move(pts));
}

bool close_ours(const Point& x, const Point& x_star, double eps) {
  return distortion(x_star, x) <= eps + kTol;
}

bool close_hartman(const Point& x, const FiniteSet& set, double eps) {
  if (x.dim() != set.dim()) throw DimensionMismatch("point and set differ in dimension");
  if (std::find(set.points().begin(), set.points().end(), x) == set.points().end()) {
    throw InvalidArgument(to_string(x) + " is not in the set");
  }
  const auto sx = sorted_values(x.coords());
  for (const auto& y : set.points()) {
    const auto sy = sorted_values(y.coords());
    for (std::size_t k = 0; k < sx.size(); ++k) {
      if (sy[k] > sx[k] + eps) return false;
      if (sy[k] < sx[k]) break;
    }
  }
  return true;
}

ClosenessVerdict closeness(const Point& x, const Point& x_star, const FiniteSet& set,
                           double eps) {
  return {close_ours(x, x_star, eps), close_hartman(x, set, eps)};
}

void settle(ExperimentRecord& r, double allowance) {
  switch (r.relation) {
    case Relation::none:
      r.pass = true;
      break;
    case Relation::at_least:
      r.pass = r.d_k >= r.bound - allowance - kRecordTol;
      break;
    case Relation::at_most:
      r.pass = r.d_k <= r.bound + allowance + kRecordTol;
      break;
  }
}

std::vector<ExperimentRecord> stability_curve(const GroundSet& set,
                                              const std::vector<double>& eps_list,
                                              const SolveBudget& budget,
                                              const StabilityOptions& options) {
  const std::size_t n = dimension(set);
  const std::size_t k = options.k == 0 ? n : options.k;
  if (k > n) throw IndexOutOfRange("distortion index exceeds dimension");
  const Point x_star = options.x_star
                           ? *options.x_star
                           : run_fill(set, 0.0, budget).iterates.back();
  SampledSet sample(set, budget.resolution, budget.cap);
  for (const auto& w : options.witnesses) {
    if (!contains(set, w)) throw InvalidArgument("witness " + to_string(w) + " is not in the set");
    sample.add(w.coords());
  }
  const double tol = std::holds_alternative<FiniteSet>(set) ? 0.0 : kTol;
  const auto star_sorted = sorted_values(x_star.coords());
  const IndexSet all = IndexSet::all(n);
  const IndexSet single = IndexSet::single(k);

  std::vector<ExperimentRecord> out;
  for (double eps : eps_list) {
    ExperimentRecord r;
    r.set = options.name;
    r.n = static_cast<double>(n);
    r.k = static_cast<double>(k);
    r.a = kNaN;
    r.c = kNaN;
    r.gamma = kNaN;
    r.eps = eps;
    r.slack = sample.slack();
    r.d_total = 0.0;
    r.d_k = 0.0;
    auto consider = [&](std::span<const double> x_sorted) {
      r.d_total = std::max(r.d_total, distortion_sorted(star_sorted, x_sorted, all));
      r.d_k = std::max(r.d_k, distortion_sorted(star_sorted, x_sorted, single));
    };
    for (std::size_t i : admissible_indices(sample, eps, tol)) consider(sample.sorted(i));
    const auto adv = run_fill(set, eps, budget, Selector::adversarial);
    consider(sorted_values(adv.iterates.back().coords()));
    if (options.at_least) {
      r.bound = *options.at_least;
      r.relation = Relation::at_least;
    } else {
      r.bound = kNaN;
    }
    settle(r);
    out.push_back(std::move(r));
  }
  return out;
}

double convergence_bound(BoundKind kind, std::size_t n, std::size_t k, double c,
                         double gamma, double a) {
  switch (kind) {
    case BoundKind::upper_log_ratio:
      return std::log(static_cast<double>(n - k + 1) / (1.0 - gamma)) / c;
    case BoundKind::rate_lower:
      return std::min(1.0, a / c) / 3.0;
    case BoundKind::sharp_lower:
      return 0.5;
  }
  return kNaN;
}

std::vector<ExperimentRecord> convergence_curve(const GroundSet& set,
                                                const std::vector<double>& c_list,
                                                double gamma, const SolveBudget& budget,
                                                const ConvergenceOptions& options) {
  const std::size_t n = dimension(set);
  const std::size_t k = options.k == 0 ? n : options.k;
  if (k > n) throw IndexOutOfRange("distortion index exceeds dimension");
  const Point x_star = options.x_star
                           ? *options.x_star
                           : run_fill(set, 0.0, budget).iterates.back();
  const double slack = exact_set(set) ? 0.0 : grid_slack(set, budget.resolution);

  std::vector<ExperimentRecord> out;
  for (double c : c_list) {
    const Point x = near_minimizer(set, LossParams{c, gamma}, budget);
    ExperimentRecord r;
    r.set = options.name;
    r.n = static_cast<double>(n);
    r.k = static_cast<double>(k);
    r.a = options.a;
    r.c = c;
    r.eps = kNaN;
    r.gamma = gamma;
    r.d_total = distortion(x_star, x);
    r.d_k = distortion(x_star, x, IndexSet::single(k));
    r.bound = convergence_bound(options.bound, n, k, c, gamma, options.a);
    r.relation =
        options.bound == BoundKind::upper_log_ratio ? Relation::at_most : Relation::at_least;
    r.slack = slack;
    settle(r, r.relation == Relation::at_most ? 2.0 * slack : 0.0);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace lexopt
