#include <cmath>
#include <random>

#include "doctest.h"
#include "lexopt/lab.hpp"

using namespace lexopt;

TEST_CASE("sharp-lower construction") {
  const auto p = sharp_lower_points(8);
  CHECK(p.x_star == Point{0, 0, 0, 0, 0, 0, 0, 1});
  CHECK(p.x_prime == Point{0, 0, 0, 0, 0, 0, 0, 0.5});
  CHECK(p.x_dprime == Point{-0.5, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.5});
  const auto path = make_sharp_lower_set(8);
  CHECK(path.vertices().front() == p.x_dprime);
  CHECK(path.vertices().back() == p.x_star);
  CHECK_THROWS_AS(sharp_lower_points(7), InvalidArgument);
}

TEST_CASE("rate-segment construction") {
  for (double a : {1.0, 2.0, 3.5}) {
    const double beta = 2.0 / 3.0;
    const double e = rate_segment_eps(a);
    CHECK(e == doctest::Approx((2 * beta - 1) / (std::exp(a * beta) + 1)));
    const auto r = rate_segment_points(5, 4, a);
    CHECK(r.eps == e);
    CHECK(r.x_star == Point{e, e, e, 1, 1});
    CHECK(r.x_prime == Point{0, e, beta, beta, 1});
  }
  CHECK(rate_segment_eps(2.0) == doctest::Approx(0.06953617577534832).epsilon(1e-14));
  const auto small = rate_segment_points(3, 3, 1.0);
  CHECK(small.eps == doctest::Approx(0.113083).epsilon(1e-5));
  CHECK(small.x_star == Point{small.eps, small.eps, 1});
  CHECK(small.x_prime == Point{0, 2.0 / 3.0, 2.0 / 3.0});
  CHECK_THROWS_AS(rate_segment_eps(0.5), InvalidArgument);
}

TEST_CASE("catalogued finite sets") {
  CHECK(intro_set().size() == 3);
  const auto h = make_hartman_set(0.5);
  CHECK(h.points()[1] == Point{9.5, 0.5, 0.5});
  CHECK(curved_membership(curved_witness(0.1)));
  CHECK(curved_membership(curved_lexmax()));
  CHECK(curved_lexmax() == Point{0, 0, 1});
}

TEST_CASE("random generators are seeded") {
  std::mt19937_64 a(5), b(5);
  CHECK(random_polytope(a, 3, 4).columns() == random_polytope(b, 3, 4).columns());
  const auto s = random_finite_set(a, 3, 50);
  CHECK(s.size() == 50);
  for (const auto& p : s.points()) CHECK(linf_bound(std::vector<Point>{p}) <= 1.0);
}

TEST_CASE("closeness notions disagree on the Hartman example") {
  for (double e : {0.5, 0.1}) {
    const auto set = make_hartman_set(e);
    const Point x_star{10, 1, 1};
    const auto x2 = closeness(set.points()[1], x_star, set, e);
    CHECK(x2.ours);
    CHECK_FALSE(x2.hartman);
    const auto x3 = closeness(set.points()[2], x_star, set, e);  // (5, 5, 1 - eps)
    CHECK_FALSE(x3.ours);
    CHECK(x3.hartman);
    CHECK(closeness(x_star, x_star, set, e).ours);
    CHECK(closeness(x_star, x_star, set, e).hartman);
  }
  CHECK_THROWS_AS(close_hartman(Point{0, 0, 0}, intro_set(), 0.1), InvalidArgument);
}

TEST_CASE("settle") {
  ExperimentRecord r;
  r.d_k = 0.3;
  r.bound = 0.25;
  r.relation = Relation::at_least;
  settle(r);
  CHECK(r.pass);
  r.relation = Relation::at_most;
  settle(r);
  CHECK_FALSE(r.pass);
  settle(r, 0.05);
  CHECK(r.pass);
}

TEST_CASE("stability curves certify the instability examples") {
  const auto pts = sharp_lower_points(8);
  StabilityOptions o;
  o.name = "sharp_lower";
  o.x_star = pts.x_star;
  o.at_least = 0.5;
  const auto path = make_sharp_lower_set(8);
  const auto recs = stability_curve(path, {0.05, 0.01}, SolveBudget{200}, o);
  REQUIRE(recs.size() == 2);
  for (const auto& r : recs) {
    CHECK(r.d_total >= 0.5 - 1e-9);
    CHECK(r.pass);
  }

  StabilityOptions c;
  c.name = "curved";
  c.x_star = curved_lexmax();
  c.witnesses = {curved_witness(0.1)};
  c.at_least = 0.25;
  const auto crecs = stability_curve(CurvedSet3{}, {0.1}, SolveBudget{60}, c);
  CHECK(crecs.front().d_total >= 0.25 - 1e-9);
  CHECK(crecs.front().pass);
}

TEST_CASE("stability on a finite set vanishes at eps = 0") {
  std::mt19937_64 rng(71);
  const auto set = random_finite_set(rng, 3, 30);
  const auto recs = stability_curve(set, {0.0, 0.2}, SolveBudget{});
  CHECK(recs[0].d_total == 0.0);
  CHECK(recs[1].d_total >= recs[0].d_total);
  CHECK(recs[1].slack == 0.0);
}

TEST_CASE("convergence bounds") {
  CHECK(convergence_bound(BoundKind::upper_log_ratio, 4, 2, 2.0, 0.5, NAN) ==
        doctest::Approx(std::log(3.0 / 0.5) / 2.0));
  CHECK(convergence_bound(BoundKind::rate_lower, 5, 4, 4.0, 0.0, 2.0) ==
        doctest::Approx(1.0 / 6.0));
  CHECK(convergence_bound(BoundKind::rate_lower, 5, 4, 1.0, 0.0, 2.0) ==
        doctest::Approx(1.0 / 3.0));
  CHECK(convergence_bound(BoundKind::sharp_lower, 8, 8, 10.0, 0.0, NAN) == 0.5);
}

TEST_CASE("convergence curves") {
  const auto r = rate_segment_points(5, 4, 2.0);
  ConvergenceOptions o;
  o.name = "rate";
  o.x_star = r.x_star;
  o.k = 4;
  o.bound = BoundKind::rate_lower;
  o.a = 2.0;
  const auto recs = convergence_curve(make_rate_segment(5, 4, 2.0), {1.0, 2.0, 8.0, 32.0}, 0.0,
                                      SolveBudget{}, o);
  REQUIRE(recs.size() == 4);
  for (const auto& rec : recs) CHECK(rec.pass);
  CHECK(recs.back().d_k < recs.front().d_k);

  ConvergenceOptions s;
  s.x_star = sharp_lower_points(8).x_star;
  s.bound = BoundKind::sharp_lower;
  for (const auto& rec :
       convergence_curve(make_sharp_lower_set(8), {2.0, 50.0}, 0.0, SolveBudget{}, s)) {
    CHECK(rec.pass);
    CHECK(rec.d_total >= 0.5 - 1e-9);
  }

  std::mt19937_64 rng(73);
  const auto set = random_finite_set(rng, 4, 30);
  for (const auto& rec : convergence_curve(set, {1.0, 10.0, 100.0}, 0.5, SolveBudget{})) {
    CHECK(rec.pass);
    CHECK(rec.relation == Relation::at_most);
  }
}
