#include <cmath>
#include <random>

#include "doctest.h"
#include "lexopt/expmin.hpp"
#include "lexopt/lab.hpp"
#include "oracle.hpp"

using namespace lexopt;

namespace {

std::vector<oracle::Vec> vecs(const std::vector<Point>& pts) {
  std::vector<oracle::Vec> out;
  for (const auto& p : pts) out.push_back(p.values());
  return out;
}

// Dense lambda scan of the loss along a path.
double path_scan_min(const PolyPath& path, double c, int steps = 20000) {
  double best = 1e300;
  for (std::size_t s = 0; s < path.segments(); ++s) {
    for (int i = 0; i <= steps; ++i) {
      const auto& a = path.vertices()[s].values();
      const auto& b = path.vertices()[s + 1].values();
      oracle::Vec x(a.size());
      const double l = static_cast<double>(i) / steps;
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = (1 - l) * a[j] + l * b[j];
      best = std::min(best, oracle::loss(x, c));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("exp_loss") {
  CHECK(exp_loss(Point{0, 0, 0, 0, 0, 0, 0, 2}, 1.0) == doctest::Approx(7 + std::exp(-2.0)));
  CHECK(exp_loss(Point{3, -4, 1.5}, 0.0) == 3.0);
  CHECK(exp_loss(sharp_lower_points(8).x_dprime, 2.0) ==
        doctest::Approx(6.725345).epsilon(1e-6));
  CHECK_THROWS_AS(exp_loss(Point{-1000, 0}, 1.0), Overflow);

  const auto s = exp_loss_scaled(Point{-1000, 0}.coords(), 1.0);
  CHECK(s.log() == doctest::Approx(1000.0));
  CHECK(s.mantissa >= 1.0);
  CHECK(s.mantissa <= 2.0);
  CHECK(loss_less(exp_loss_scaled(Point{1, 1}.coords(), 900.0),
                  exp_loss_scaled(Point{1, 0.999}.coords(), 900.0)));
  CHECK_FALSE(loss_less(exp_loss_scaled(Point{1, 1}.coords(), 3.0),
                        exp_loss_scaled(Point{1, 1}.coords(), 3.0)));
}

TEST_CASE("exp_loss matches direct summation") {
  std::mt19937_64 rng(41);
  for (const auto& v : oracle::random_points(rng, 5, 200, -3, 3)) {
    for (double c : {0.1, 1.0, 7.0}) {
      CHECK(exp_loss(Point(v), c) == doctest::Approx(oracle::loss(v, c)).epsilon(1e-13));
    }
  }
}

TEST_CASE("loss parameters") {
  CHECK_NOTHROW((LossParams{2.0, 0.5}.validate()));
  CHECK_NOTHROW((LossParams{0.0, 0.5}.validate()));
  CHECK_THROWS_AS((LossParams{1.0, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((LossParams{1.0, -0.1}.validate()), InvalidArgument);
  CHECK(near_min_threshold(2.0, 0.5, 1.0) == doctest::Approx(0.5 * std::exp(-2.0)));
  CHECK(near_min_threshold(2.0, 0.0, 1.0) == 0.0);
}

TEST_CASE("softmax potential and gradient") {
  const VPolytope poly({Point{1, 0}, Point{0, 1}});
  const double q[] = {0.5, 0.5};
  CHECK(softmax_potential(poly, q, 2.0) == doctest::Approx((std::log(2.0) - 1.0) / 2.0));
  const auto p = row_distribution(poly, q, 2.0);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));
  const double bad[] = {0.7, 0.7};
  CHECK_THROWS_AS(softmax_potential(poly, bad, 1.0), InvalidArgument);

  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto P = random_polytope(rng, 2 + trial % 4, 2 + trial % 5);
    const auto cols = vecs(P.columns());
    std::vector<double> w(P.cols());
    double sum = 0;
    for (double& x : w) sum += (x = u(rng) + 0.05);
    for (double& x : w) x /= sum;
    const double c = 0.5 + trial % 6;
    CHECK(softmax_potential(P, w, c) == doctest::Approx(oracle::potential(cols, w, c)));
    const auto g = softmax_gradient(P, w, c);
    const double h = 1e-6;
    for (std::size_t j = 0; j < w.size(); ++j) {
      auto up = w, dn = w;
      up[j] += h;
      dn[j] -= h;
      const double fd = (oracle::potential(cols, up, c) - oracle::potential(cols, dn, c)) / (2 * h);
      CHECK(g[j] == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("minimize_on_path") {
  const auto pts = sharp_lower_points(8);
  const auto path = make_sharp_lower_set(8);
  const Point m2 = minimize_on_path(path, 2.0);
  CHECK(sigma(m2, 8) == doctest::Approx(0.5));
  CHECK(exp_loss(m2, 2.0) <= path_scan_min(path, 2.0) + 1e-12);

  const auto m50 = path_minimizer(path, 50.0);
  CHECK(m50.loss.log() <= std::log(path_scan_min(path, 50.0)) + 1e-12);
  CHECK(m50.segment == 0);  // the minimizer stays on the bad segment
  CHECK(distortion(pts.x_star, m50.x) >= 0.5 - 1e-12);

  const auto r3 = rate_segment_points(3, 3, 1.0);
  for (double c : {0.25, 1.0}) {
    CHECK(linf_distance(minimize_on_path(make_rate_segment(3, 3, 1.0), c).coords(),
                        r3.x_prime.coords()) <= 1e-9);
  }

  for (double a : {1.0, 2.0, 4.0}) {
    const auto r = rate_segment_points(5, 4, a);
    const auto seg = make_rate_segment(5, 4, a);
    for (double c : {0.5 * a, a}) {
      const Point m = minimize_on_path(seg, c);
      CHECK(linf_distance(m.coords(), r.x_prime.coords()) <= 1e-9);
    }
    for (double c : {2 * a, 8 * a}) {
      const Point m = minimize_on_path(seg, c);
      CHECK(exp_loss(m, c) <= path_scan_min(seg, c) * (1 + 1e-12));
      CHECK(distortion(r.x_star, m, IndexSet{4}) >= a / (3 * c) - 1e-9);
    }
  }
}

TEST_CASE("minimize_on_finite") {
  CHECK(minimize_on_finite(intro_set(), 1.0) == Point{5, 2, 4});
  CHECK(minimize_on_finite(intro_set(), 0.0) == Point{5, 2, 4});  // all tie; lowest index
  const FiniteSet tie{Point{1, 2}, Point{2, 1}};
  CHECK(minimize_on_finite(tie, 3.0) == Point{1, 2});

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const auto set = random_finite_set(rng, 3, 25);
    const double c = 1.0 + trial;
    double best = 1e300;
    for (const auto& p : set.points()) best = std::min(best, oracle::loss(p.values(), c));
    CHECK(exp_loss(minimize_on_finite(set, c), c) == doctest::Approx(best).epsilon(1e-14));
  }
}

TEST_CASE("Frank-Wolfe on two coordinates") {
  const VPolytope poly({Point{1, 0}, Point{0, 1}});
  const auto run = frank_wolfe(poly, 1.0, 50);
  CHECK(run.rounds() == 50);
  CHECK(run.q_average()[0] == doctest::Approx(0.5).epsilon(0.05));
  for (const auto& q : run.q_averages) {
    CHECK(q[0] + q[1] == doctest::Approx(1.0));
  }
  for (double g : run.gap_history) CHECK(g >= -1e-12);
  CHECK(run.gap_history.back() <= run.gap_history.front() + 1e-12);
}

TEST_CASE("multiplicative weights with c/t reproduces Frank-Wolfe") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const auto P = random_polytope(rng, 2 + trial % 5, 2 + trial % 4);
    const double c = 1.0 + trial % 4;
    const auto fw = frank_wolfe(P, c, 200, FwStart::uniform_p);
    const auto mw = multiplicative_weights(P, Schedule::c_over_t, c, 200);
    CHECK(fw.vertices == mw.vertices);
    for (std::size_t t = 0; t < 200; ++t) {
      CHECK(linf_distance(fw.p_iterates[t], mw.p_iterates[t]) <= 1e-12);
    }
  }
  CHECK(to_string(Schedule::c_over_t) == "c/t");
  CHECK(to_string(Schedule::frank_wolfe) == "fw");
  CHECK(to_string(Schedule::constant) == "constant");
}

TEST_CASE("Frank-Wolfe gap shrinks") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const auto P = random_polytope(rng, 3, 4);
    const auto run = frank_wolfe(P, 2.0, 1000);
    CHECK(run.gap_history.back() <= 20.0 * std::log(1000.0) / 1000.0);
    CHECK(run.gap_history.back() >= -1e-12);
  }
}

TEST_CASE("near-minimizer certificates") {
  const auto path = make_sharp_lower_set(8);
  const LossParams params{2.0, 0.5};
  const auto exact = certify_near_min(path, minimize_on_path(path, 2.0), params, SolveBudget{});
  CHECK(exact.passed);
  const auto far = certify_near_min(path, sharp_lower_points(8).x_dprime, params, SolveBudget{});
  CHECK_FALSE(far.passed);
  CHECK(far.loss > far.inf_estimate + far.threshold);

  const auto near = near_minimizer(intro_set(), {1.0, 0.0}, SolveBudget{});
  CHECK(near == Point{5, 2, 4});

  std::mt19937_64 rng(61);
  const auto P = random_polytope(rng, 3, 4);
  const LossParams pp{3.0, 0.2};
  const Point x = near_minimizer(P, pp, SolveBudget{40});
  CHECK(certify_near_min(P, x, pp, SolveBudget{40}).passed);
}

TEST_CASE("near-minimizers of finite sets stay within the log-ratio band") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto set = random_finite_set(rng, n, 20);
    const auto pts = vecs(set.points());
    const double norm = linf_bound(set.points());
    for (double c : {1.0, 5.0, 25.0}) {
      for (double gamma : {0.0, 0.5}) {
        double lmin = 1e300;
        for (const auto& p : pts) lmin = std::min(lmin, oracle::loss(p, c));
        const double thr = gamma * std::exp(-c * norm);
        for (const auto& p : pts) {
          if (oracle::loss(p, c) > lmin + thr) continue;
          const auto s = oracle::sorted(p);
          for (std::size_t k = 1; k <= n; ++k) {
            const double band = std::log((n - k + 1) / (1 - gamma)) / c;
            CHECK(s[k - 1] >= oracle::round_sup(pts, p, k) - band - 1e-9);
          }
        }
      }
    }
  }
}
