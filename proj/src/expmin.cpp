#include "lexopt/expmin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>


namespace lexopt {

namespace {

// log(DBL_MAX), rounded down.
constexpr double kMaxLog = 709.78;

void require_positive_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("c must be positive and finite");
}

std::vector<double> image(const VPolytope& poly, std::span<const double> q) {
  std::vector<double> y(poly.rows(), 0.0);
  for (std::size_t c = 0; c < poly.cols(); ++c) {
    if (q[c] == 0.0) continue;
    for (std::size_t r = 0; r < poly.rows(); ++r) y[r] += q[c] * poly.at(r, c);
  }
  return y;
}

// Normalized exp of log-weights, shifted by their max.
std::vector<double> softmax(const std::vector<double>& logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(logits[i] - top);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

std::vector<double> column_payoff(const VPolytope& poly, const std::vector<double>& p) {
  std::vector<double> out(poly.cols(), 0.0);
  for (std::size_t c = 0; c < poly.cols(); ++c) {
    for (std::size_t r = 0; r < poly.rows(); ++r) out[c] += p[r] * poly.at(r, c);
  }
  return out;
}

struct PotentialState {
  double value;
  std::vector<double> p;
  std::vector<double> grad;
};

PotentialState potential_state(const VPolytope& poly, std::span<const double> q, double c) {
  const auto y = image(poly, q);
  std::vector<double> logits(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) logits[i] = -c * y[i];
  const double top = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double l : logits) z += std::exp(l - top);
  PotentialState s;
  s.value = (top + std::log(z)) / c;
  s.p = softmax(logits);
  s.grad = column_payoff(poly, s.p);
  for (double& g : s.grad) g = -g;
  return s;
}

// H(q) + min_j grad_j - <grad, q>: a lower bound on min H by convexity.
double linear_lower_bound(const PotentialState& s, std::span<const double> q) {
  double inner = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) inner += s.grad[j] * q[j];
  return s.value + *std::min_element(s.grad.begin(), s.grad.end()) - inner;
}

// Looser than polytope_point: long Frank-Wolfe averages drift by a few ulps per round.
void check_simplex(const VPolytope& poly, std::span<const double> q) {
  if (q.size() != poly.cols()) {
    throw DimensionMismatch("weight vector length differs from column count");
  }
  double total = 0.0;
  for (double w : q) {
    if (!(w >= -1e-9)) throw InvalidArgument("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("weights must sum to 1");
}

std::vector<double> unit(std::size_t n, std::size_t j) {
  std::vector<double> e(n, 0.0);
  e[j] = 1.0;
  return e;
}

std::vector<double> uniform(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

}  // namespace

double ScaledLoss::log() const { return log_scale + std::log(mantissa); }

double ScaledLoss::value() const {
  const double l = log();
  if (l > kMaxLog) {
    throw Overflow("exponential loss exceeds the double range (log = " + std::to_string(l) +
                   ")");
  }
  // mantissa >= 1, so the scale factor alone cannot overflow here
  return mantissa * std::exp(log_scale);
}

ScaledLoss exp_loss_scaled(std::span<const double> x, double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidArgument("c must be nonnegative");
  if (x.empty()) throw InvalidArgument("loss of an empty vector");
  const double m = *std::min_element(x.begin(), x.end());
  ScaledLoss out;
  out.log_scale = c == 0.0 ? 0.0 : -c * m;
  for (double v : x) out.mantissa += std::exp(-c * (v - m));
  return out;
}

double exp_loss(const Point& x, double c) { return exp_loss_scaled(x.coords(), c).value(); }

bool loss_less(const ScaledLoss& a, const ScaledLoss& b) {
  const double d = a.log_scale - b.log_scale;
  if (d == 0.0) return a.mantissa < b.mantissa;
  if (std::abs(d) < 600.0) return a.mantissa * std::exp(d) < b.mantissa;
  return a.log() < b.log();
}

void LossParams::validate() const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidArgument("c must be nonnegative");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in [0, 1)");
}

double near_min_threshold(double c, double gamma, double norm_bound) {
  LossParams{c, gamma}.validate();
  if (!(norm_bound >= 0.0)) throw InvalidArgument("norm bound must be nonnegative");
  return gamma * std::exp(-c * norm_bound);
}

double softmax_potential(const VPolytope& poly, std::span<const double> q, double c) {
  require_positive_c(c);
  check_simplex(poly, q);
  return potential_state(poly, q, c).value;
}

std::vector<double> row_distribution(const VPolytope& poly, std::span<const double> q,
                                     double c) {
  require_positive_c(c);
  check_simplex(poly, q);
  return potential_state(poly, q, c).p;
}

std::vector<double> softmax_gradient(const VPolytope& poly, std::span<const double> q,
                                     double c) {
  require_positive_c(c);
  check_simplex(poly, q);
  return potential_state(poly, q, c).grad;
}

PathMinimum path_minimizer(const PolyPath& path, double c) {
  require_positive_c(c);
  std::optional<PathMinimum> best;
  auto consider = [&](std::size_t seg, double lambda) {
    Point x = path_point(path, seg, lambda);
    const auto loss = exp_loss_scaled(x.coords(), c);
    if (!best || loss_less(loss, best->loss)) best = PathMinimum{std::move(x), seg, lambda, loss};
  };
  for (std::size_t seg = 0; seg < path.segments(); ++seg) {
    const auto& near = path.vertices()[seg];
    const auto& far = path.vertices()[seg + 1];
    // Sign of the derivative of the loss in lambda, evaluated in shifted form.
    // The loss is convex along the segment, so this is monotone and bisection
    // on it resolves lambda to full precision where the loss itself is flat.
    auto slope = [&](double lambda) {
      const auto x = path_point(path, seg, lambda);
      const double m = *std::min_element(x.coords().begin(), x.coords().end());
      double d = 0.0;
      for (std::size_t i = 0; i < x.dim(); ++i) {
        d -= (far[i] - near[i]) * std::exp(-c * (x[i] - m));
      }
      return d;
    };
    double lambda;
    if (slope(0.0) >= 0.0) {
      lambda = 0.0;
    } else if (slope(1.0) <= 0.0) {
      lambda = 1.0;
    } else {
      double lo = 0.0;
      double hi = 1.0;
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (slope(mid) < 0.0 ? lo : hi) = mid;
      }
      lambda = 0.5 * (lo + hi);
    }
    consider(seg, 0.0);
    consider(seg, lambda);
    consider(seg, 1.0);
  }
  return *best;
}

Point minimize_on_path(const PolyPath& path, double c) { return path_minimizer(path, c).x; }

std::size_t argmin_loss(std::span<const Point> points, double c) {
  if (points.empty()) throw InvalidArgument("argmin over an empty list");
  std::size_t best = 0;
  auto best_loss = exp_loss_scaled(points[0].coords(), c);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto loss = exp_loss_scaled(points[i].coords(), c);
    if (loss_less(loss, best_loss)) {
      best = i;
      best_loss = loss;
    }
  }
  return best;
}

Point minimize_on_finite(const FiniteSet& set, double c) {
  return set.points()[argmin_loss(set.points(), c)];
}

std::string to_string(Schedule s) {
  switch (s) {
    case Schedule::constant:
      return "constant";
    case Schedule::c_over_t:
      return "c/t";
    case Schedule::frank_wolfe:
      return "fw";
  }
  return "unknown";
}

SolverRun frank_wolfe(const VPolytope& poly, double c, std::size_t T, FwStart start) {
  require_positive_c(c);
  if (T == 0) throw InvalidArgument("T must be at least 1");
  const std::size_t nc = poly.cols();
  const std::size_t m = poly.rows();
  SolverRun run;
  run.schedule = Schedule::frank_wolfe;
  run.param = c;
  run.p_average.assign(m, 0.0);

  auto qbar = uniform(nc);
  double best_lb = -std::numeric_limits<double>::infinity();
  std::vector<double> p;
  std::vector<double> grad;
  if (start == FwStart::uniform_p) {
    p = uniform(m);
    grad = column_payoff(poly, p);
    for (double& g : grad) g = -g;
  } else {
    auto s = potential_state(poly, qbar, c);
    best_lb = linear_lower_bound(s, qbar);
    p = std::move(s.p);
    grad = std::move(s.grad);
  }

  for (std::size_t t = 1; t <= T; ++t) {
    const auto j = static_cast<std::size_t>(
        std::min_element(grad.begin(), grad.end()) - grad.begin());
    const double step = 1.0 / static_cast<double>(t);
    for (std::size_t i = 0; i < nc; ++i) {
      qbar[i] = (1.0 - step) * qbar[i] + (i == j ? step : 0.0);
    }
    run.vertices.push_back(j);
    run.q_iterates.push_back(unit(nc, j));
    for (std::size_t i = 0; i < m; ++i) run.p_average[i] += p[i];
    run.p_iterates.push_back(std::move(p));
    run.q_averages.push_back(qbar);

    auto s = potential_state(poly, qbar, c);
    best_lb = std::max(best_lb, linear_lower_bound(s, qbar));
    run.gap_history.push_back(std::max(0.0, s.value - best_lb));
    p = std::move(s.p);
    grad = std::move(s.grad);
  }
  for (double& v : run.p_average) v /= static_cast<double>(T);
  return run;
}

SolverRun multiplicative_weights(const VPolytope& poly, Schedule schedule, double param,
                                 std::size_t T) {
  if (schedule == Schedule::frank_wolfe) {
    throw InvalidArgument("multiplicative weights takes a constant or c/t schedule");
  }
  if (!(param > 0.0) || !std::isfinite(param)) {
    throw InvalidArgument("learning-rate parameter must be positive");
  }
  if (T == 0) throw InvalidArgument("T must be at least 1");
  const std::size_t nc = poly.cols();
  const std::size_t m = poly.rows();
  SolverRun run;
  run.schedule = schedule;
  run.param = param;
  run.p_average.assign(m, 0.0);

  std::vector<double> p = uniform(m);
  std::vector<double> counts(nc, 0.0);
  double best_lb = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= T; ++t) {
    const auto payoff = column_payoff(poly, p);
    const auto j = static_cast<std::size_t>(
        std::max_element(payoff.begin(), payoff.end()) - payoff.begin());
    counts[j] += 1.0;
    run.vertices.push_back(j);
    run.q_iterates.push_back(unit(nc, j));
    for (std::size_t i = 0; i < m; ++i) run.p_average[i] += p[i];
    run.p_iterates.push_back(p);

    std::vector<double> qbar(nc);
    for (std::size_t i = 0; i < nc; ++i) qbar[i] = counts[i] / static_cast<double>(t);
    const auto s = potential_state(poly, qbar, param);
    best_lb = std::max(best_lb, linear_lower_bound(s, qbar));
    run.gap_history.push_back(std::max(0.0, s.value - best_lb));
    run.q_averages.push_back(std::move(qbar));

    const double eta =
        schedule == Schedule::constant ? param : param / static_cast<double>(t);
    const auto total = image(poly, counts);
    std::vector<double> logits(m);
    for (std::size_t i = 0; i < m; ++i) logits[i] = -eta * total[i];
    p = softmax(logits);
  }
  for (double& v : run.p_average) v /= static_cast<double>(T);
  return run;
}

Point loss_infimum_point(const GroundSet& set, double c, const SolveBudget& budget) {
  if (!(c >= 0.0)) throw InvalidArgument("c must be nonnegative");
  if (const auto* finite = std::get_if<FiniteSet>(&set)) return minimize_on_finite(*finite, c);
  if (const auto* path = std::get_if<PolyPath>(&set)) {
    if (c == 0.0) return path->vertices().front();
    return minimize_on_path(*path, c);
  }
  std::optional<std::vector<double>> best;
  ScaledLoss best_loss;
  for_each_grid_point(set, budget.resolution, [&](std::span<const double> x, auto) {
    const auto loss = exp_loss_scaled(x, c);
    if (!best || loss_less(loss, best_loss)) {
      best.emplace(x.begin(), x.end());
      best_loss = loss;
    }
  });
  Point out(std::move(*best));
  if (const auto* poly = std::get_if<VPolytope>(&set); poly && c > 0.0) {
    const auto run = frank_wolfe(*poly, c, 2000);
    Point fw(image(*poly, run.q_average()));
    if (loss_less(exp_loss_scaled(fw.coords(), c), best_loss)) out = std::move(fw);
  }
  return out;
}

NearMinCert certify_near_min(const GroundSet& set, const Point& x, const LossParams& params,
                             const SolveBudget& budget) {
  params.validate();
  if (!contains(set, x)) throw InvalidArgument(to_string(x) + " is not in the set");
  const Point inf_point = loss_infimum_point(set, params.c, budget);
  const auto lx = exp_loss_scaled(x.coords(), params.c);
  const auto li = exp_loss_scaled(inf_point.coords(), params.c);
  const double log_thr = -params.c * set_linf_bound(set);

  NearMinCert cert{x, std::exp(lx.log()), std::exp(li.log()),
                   params.gamma * std::exp(log_thr), false};
  // Everything relative to the infimum's scale.
  const double base = li.log_scale;
  const double rel_x = lx.mantissa * std::exp(lx.log_scale - base);
  const double rel_thr = params.gamma * std::exp(log_thr - base);
  cert.passed = rel_x <= li.mantissa + rel_thr;
  return cert;
}

Point near_minimizer(const GroundSet& set, const LossParams& params,
                     const SolveBudget& budget, std::size_t max_rounds) {
  params.validate();
  const auto* poly = std::get_if<VPolytope>(&set);
  if (poly == nullptr || params.c == 0.0) return loss_infimum_point(set, params.c, budget);

  const double c = params.c;
  std::optional<std::vector<double>> grid_best;
  ScaledLoss grid_loss;
  for_each_grid_point(set, budget.resolution, [&](std::span<const double> x, auto) {
    const auto loss = exp_loss_scaled(x, c);
    if (!grid_best || loss_less(loss, grid_loss)) {
      grid_best.emplace(x.begin(), x.end());
      grid_loss = loss;
    }
  });

  const auto run = frank_wolfe(*poly, c, std::max<std::size_t>(1, max_rounds));
  const double log_thr = std::log(params.gamma) - c * set_linf_bound(set);
  std::size_t pick = run.rounds() - 1;
  for (std::size_t t = 0; t < run.rounds(); ++t) {
    // A potential gap g bounds the loss ratio by exp(c g).
    const auto lt = exp_loss_scaled(image(*poly, run.q_averages[t]), c);
    const double allowed = std::log1p(std::exp(log_thr - lt.log())) / c;
    if (run.gap_history[t] <= allowed) {
      pick = t;
      break;
    }
  }
  Point fw(image(*poly, run.q_averages[pick]));
  if (loss_less(grid_loss, exp_loss_scaled(fw.coords(), c))) return Point(std::move(*grid_best));
  return fw;
}

}  // namespace lexopt
