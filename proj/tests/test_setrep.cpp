#include <cmath>
#include <random>

#include "doctest.h"
#include "lexopt/lab.hpp"
#include "lexopt/setrep.hpp"
#include "oracle.hpp"

using namespace lexopt;

TEST_CASE("finite sets reject duplicates and mixed dimensions") {
  CHECK_THROWS_AS((FiniteSet{Point{1, 2}, Point{1, 2}}), InvalidArgument);
  CHECK_THROWS_AS((FiniteSet{Point{1, 2}, Point{1}}), DimensionMismatch);
  CHECK_THROWS_AS(FiniteSet(std::vector<Point>{}), InvalidArgument);
  CHECK_THROWS_AS((PolyPath({Point{1, 2}, Point{1, 2}})), InvalidArgument);
  CHECK_THROWS_AS((PolyPath({Point{1, 2}})), InvalidArgument);
}

TEST_CASE("path_point") {
  const auto path = make_sharp_lower_set(8);
  CHECK(path_point(path, 1, 1.0) == sharp_lower_points(8).x_star);
  CHECK(path_point(path, 0, 0.0) == path.vertices()[0]);
  const double eps = rate_segment_eps(1.0);
  const PolyPath seg({Point{0, 2.0 / 3, 2.0 / 3}, Point{eps, eps, 1}});
  const Point mid = path_point(seg, 0, 0.5);
  const std::vector<double> expect{eps / 2, 1.0 / 3 + eps / 2, 5.0 / 6};
  for (std::size_t i = 0; i < 3; ++i) CHECK(mid[i] == doctest::Approx(expect[i]).epsilon(1e-15));
  CHECK_THROWS_AS(path_point(seg, 0, 1.5), InvalidArgument);
  CHECK_THROWS_AS(path_point(seg, 1, 0.5), IndexOutOfRange);
}

TEST_CASE("polytope_point") {
  const VPolytope id({Point{1, 0}, Point{0, 1}});
  CHECK(polytope_point(id, std::vector<double>{1, 0}) == Point{1, 0});
  const VPolytope two({Point{5, 2, 4}, Point{2, 6, 3}});
  CHECK(polytope_point(two, std::vector<double>{0.5, 0.5}) == Point{3.5, 4, 3.5});
  const VPolytope three({Point{1, 4}, Point{2, 5}, Point{6, 0}});
  const Point avg = polytope_point(three, std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(avg[0] == doctest::Approx(3.0));
  CHECK(avg[1] == doctest::Approx(3.0));
  CHECK_THROWS_AS(polytope_point(id, std::vector<double>{0.6, 0.6}), InvalidArgument);
  CHECK_THROWS_AS(polytope_point(id, std::vector<double>{1.2, -0.2}), InvalidArgument);
  CHECK_THROWS_AS(polytope_point(id, std::vector<double>{1.0}), DimensionMismatch);
}

TEST_CASE("curved_membership") {
  CHECK(curved_membership(Point{-0.01, 0.05, 0.75}));
  CHECK((-0.01) * (0.75 - 1) == doctest::Approx(0.05 * 0.05));
  CHECK(curved_membership(Point{0, 0, 1}));
  CHECK_FALSE(curved_membership(Point{0, 0.5, 1}));
  CHECK_THROWS_AS(curved_membership(Point{0, 0}), DimensionMismatch);
}

TEST_CASE("enumerate_grid") {
  const FiniteSet ab{Point{1, 2}, Point{3, 0}};
  CHECK(enumerate_grid(ab, 7).points() == ab.points());
  const PolyPath seg({Point{0, 0}, Point{2, 4}});
  const auto g = enumerate_grid(seg, 2);
  CHECK(g.points() == std::vector<Point>{{0, 0}, {1, 2}, {2, 4}});
  const VPolytope two({Point{1, 0}, Point{0, 1}});
  CHECK(enumerate_grid(two, 4).size() == 5);
  CHECK(grid_size(VPolytope({Point{1}, Point{2}, Point{3}, Point{4}}), 6) == 84);  // C(9,3)
  CHECK_THROWS_AS(enumerate_grid(seg, 0), InvalidArgument);
  CHECK_THROWS_AS(enumerate_grid(VPolytope({Point{1}, Point{2}, Point{3}, Point{4}}), 300, 1000),
                  BudgetExceeded);
}

TEST_CASE("grid points lie in the set and include every vertex") {
  std::mt19937_64 rng(13);
  std::vector<GroundSet> sets{make_sharp_lower_set(8), make_rate_segment(5, 4, 2.0),
                              random_polytope(rng, 3, 4), CurvedSet3{}};
  for (const auto& set : sets) {
    for (std::size_t r : {1u, 3u, 10u}) {
      const auto grid = enumerate_grid(set, r);
      CHECK(grid.size() == grid_size(set, r));
      for (const auto& p : grid.points()) {
        if (std::holds_alternative<CurvedSet3>(set)) {
          CHECK(curved_membership(p.coords(), 1e-9));
        } else {
          CHECK(contains(set, p));
        }
      }
      CHECK(linf_bound(grid.points()) <= set_linf_bound(set) + 1e-12);
      if (!std::holds_alternative<CurvedSet3>(set)) {
        for (const auto& v : generators(set)) {
          bool found = false;
          for (const auto& p : grid.points()) found = found || linf_distance(p.coords(), v.coords()) <= 1e-15;
          CHECK(found);
        }
      }
    }
  }
}

TEST_CASE("curved grid: boundary points satisfy the constraint with equality") {
  std::size_t tight = 0;
  for_each_grid_point(CurvedSet3{}, 20, [&](std::span<const double> x, auto) {
    const double slack = x[0] * (x[2] - 1.0) - x[1] * x[1];
    CHECK(slack >= -1e-12);
    tight += std::abs(slack) <= 1e-12;
  });
  CHECK(tight > 0);
}

TEST_CASE("affine parametrizations") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto path = make_sharp_lower_set(9);
  const auto poly = random_polytope(rng, 4, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = u(rng);
    const double b = u(rng);
    const double t = u(rng);
    const Point pa = path_point(path, 1, a);
    const Point pb = path_point(path, 1, b);
    const Point pt = path_point(path, 1, t * a + (1 - t) * b);
    for (std::size_t i = 0; i < pa.dim(); ++i) {
      CHECK(std::abs(pt[i] - (t * pa[i] + (1 - t) * pb[i])) <= 1e-12);
    }
    std::vector<double> qa{a, 1 - a, 0};
    std::vector<double> qb{0, b, 1 - b};
    std::vector<double> qt(3);
    for (int i = 0; i < 3; ++i) qt[i] = t * qa[i] + (1 - t) * qb[i];
    const Point ya = polytope_point(poly, qa);
    const Point yb = polytope_point(poly, qb);
    const Point yt = polytope_point(poly, qt);
    for (std::size_t i = 0; i < ya.dim(); ++i) {
      CHECK(std::abs(yt[i] - (t * ya[i] + (1 - t) * yb[i])) <= 1e-12);
    }
  }
}

TEST_CASE("grid slack and resolution coupling") {
  const auto path = make_sharp_lower_set(8);
  // Longest segment in the sup norm is x'' -> x' (length 1/2).
  CHECK(grid_spacing_error(path, 10) == doctest::Approx(0.05));
  CHECK(grid_slack(path, 10) == doctest::Approx(0.15));
  CHECK(resolution_for_spacing(path, 0.01) == 50);
  CHECK(grid_slack(CurvedSet3{}, 60) == doctest::Approx(0.05));
  CHECK(grid_slack(intro_set(), 3) == 0.0);
}
