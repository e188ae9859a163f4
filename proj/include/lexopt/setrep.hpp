#pragma once

// Representations of the feasible set and their desk-scale discretizations.

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "lexopt/core.hpp"

namespace lexopt {

/// Nonempty list of distinct points of one dimension.
class FiniteSet {
 public:
  explicit FiniteSet(std::vector<Point> points);
  FiniteSet(std::initializer_list<Point> points);

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.front().dim(); }

 private:
  std::vector<Point> points_;
};

/// X = {Mq : q in the simplex}, with M stored column by column.
class VPolytope {
 public:
  explicit VPolytope(std::vector<Point> columns);

  std::size_t rows() const { return columns_.front().dim(); }
  std::size_t cols() const { return columns_.size(); }
  double at(std::size_t row, std::size_t col) const { return columns_[col][row]; }
  const std::vector<Point>& columns() const { return columns_; }

 private:
  std::vector<Point> columns_;
};

/// Union of the closed segments joining consecutive vertices.
class PolyPath {
 public:
  explicit PolyPath(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t segments() const { return vertices_.size() - 1; }
  std::size_t dim() const { return vertices_.front().dim(); }

 private:
  std::vector<Point> vertices_;
};

/// {x in [-1,0]x[0,1]x[0,1] : x1 (x3 - 1) >= x2^2}, compact and convex.
struct CurvedSet3 {};

using GroundSet = std::variant<FiniteSet, VPolytope, PolyPath, CurvedSet3>;

inline constexpr std::size_t kDefaultGridCap = 2'000'000;

/// lambda * v[seg+1] + (1 - lambda) * v[seg]; lambda = 1 gives the later vertex.
Point path_point(const PolyPath& path, std::size_t seg, double lambda);

/// Mq for q in the simplex (checked to 1e-12).
Point polytope_point(const VPolytope& poly, std::span<const double> q);

bool curved_membership(const Point& x);
bool curved_membership(std::span<const double> x, double tol);

/// Upper end of the feasible x2 range of the curved set for fixed (x1, x3).
double curved_x2_bound(double x1, double x3);

std::size_t dimension(const GroundSet& set);

/// Vertex or generator list; for the curved set, points attaining its norm.
std::vector<Point> generators(const GroundSet& set);

/// ||X||_inf of the represented set.
double set_linf_bound(const GroundSet& set);

/// Membership within `tol`. Polytopes are not checked (always true).
bool contains(const GroundSet& set, const Point& x, double tol = 1e-9);

/// Number of points the grid of the given resolution yields.
std::size_t grid_size(const GroundSet& set, std::size_t resolution);

/// Per-coordinate distance from any point of the set to its nearest grid
/// point, as a bound.
double grid_spacing_error(const GroundSet& set, std::size_t resolution);

/// Certified sigma-value error of the grid: 3 * grid_spacing_error.
double grid_slack(const GroundSet& set, std::size_t resolution);

/// Smallest resolution whose spacing error is at most `target` per coordinate.
std::size_t resolution_for_spacing(const GroundSet& set, double target);

/// Grid point visitor. The second argument is the point's lattice parameter:
/// (segment, lambda) for paths, the weight vector for polytopes, the lattice
/// indices for the curved set, and the list index for finite sets.
using GridVisitor =
    std::function<void(std::span<const double> point, std::span<const double> param)>;

/// Streams grid points in lexicographic lattice order without materializing.
void for_each_grid_point(const GroundSet& set, std::size_t resolution,
                         const GridVisitor& visit);

FiniteSet enumerate_grid(const GroundSet& set, std::size_t resolution,
                         std::size_t cap = kDefaultGridCap);

}  // namespace lexopt
