#include "lexopt/setrep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lexopt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_uniform_dim(const std::vector<Point>& pts, const char* what) {
  for (const auto& p : pts) {
    if (p.dim() != pts.front().dim()) {
      throw DimensionMismatch(std::string(what) + " of mixed dimension");
    }
  }
}

// Indices sorted by raw coordinates; used to detect exact duplicates.
std::vector<std::size_t> coordinate_order(const std::vector<Point>& pts) {
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(pts[a].coords().begin(), pts[a].coords().end(),
                                        pts[b].coords().begin(), pts[b].coords().end());
  });
  return idx;
}

double segment_length(const PolyPath& path, std::size_t seg) {
  return linf_distance(path.vertices()[seg].coords(), path.vertices()[seg + 1].coords());
}

double max_row_range(const VPolytope& poly) {
  double d = 0.0;
  for (std::size_t r = 0; r < poly.rows(); ++r) {
    double lo = poly.at(r, 0);
    double hi = lo;
    for (std::size_t c = 1; c < poly.cols(); ++c) {
      lo = std::min(lo, poly.at(r, c));
      hi = std::max(hi, poly.at(r, c));
    }
    d = std::max(d, hi - lo);
  }
  return d;
}

// Largest j in [0, r] with j / r <= bound (+ tolerance).
std::size_t lattice_floor(double bound, std::size_t r) {
  auto j = static_cast<std::size_t>(
      std::max(0.0, std::floor(bound * static_cast<double>(r))));
  j = std::min(j, r);
  while (j < r && static_cast<double>(j + 1) / static_cast<double>(r) <= bound + kTol) ++j;
  while (j > 0 && static_cast<double>(j) / static_cast<double>(r) > bound + kTol) --j;
  return j;
}

double binomial(std::size_t n, std::size_t k) {
  double out = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(out);
}

void visit_simplex_lattice(const VPolytope& poly, std::size_t r,
                           const GridVisitor& visit) {
  const std::size_t n = poly.cols();
  const std::size_t m = poly.rows();
  const double rd = static_cast<double>(r);
  std::vector<std::size_t> counts(n, 0);
  std::vector<double> q(n);
  std::vector<double> point(m);

  // Compositions of r into n parts, lexicographic in (k_1, ..., k_n).
  auto emit = [&] {
    std::fill(point.begin(), point.end(), 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      q[c] = static_cast<double>(counts[c]) / rd;
      if (counts[c] == 0) continue;
      for (std::size_t row = 0; row < m; ++row) point[row] += q[c] * poly.at(row, c);
    }
    visit(point, q);
  };
  if (n == 1) {
    counts[0] = r;
    emit();
    return;
  }
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                           std::size_t left) {
    if (pos + 1 == n) {
      counts[pos] = left;
      emit();
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      counts[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, r);
}

void visit_curved(std::size_t r, const GridVisitor& visit) {
  const double rd = static_cast<double>(r);
  std::vector<std::size_t> jmax(r + 1);
  std::vector<double> bound(r + 1);
  std::vector<char> project(r + 1);
  double point[3];
  double param[3];
  for (std::size_t i = 0; i <= r; ++i) {
    const double x1 = -static_cast<double>(r - i) / rd;
    for (std::size_t l = 0; l <= r; ++l) {
      const double x3 = static_cast<double>(l) / rd;
      bound[l] = curved_x2_bound(x1, x3);
      jmax[l] = lattice_floor(bound[l], r);
      project[l] = jmax[l] < r &&
                   bound[l] - static_cast<double>(jmax[l]) / rd > kTol;
    }
    for (std::size_t j = 0; j <= r; ++j) {
      for (std::size_t l = 0; l <= r; ++l) {
        double x2;
        if (j <= jmax[l]) {
          x2 = static_cast<double>(j) / rd;
        } else if (j == jmax[l] + 1 && project[l]) {
          x2 = bound[l];
        } else {
          continue;
        }
        point[0] = x1;
        point[1] = x2;
        point[2] = static_cast<double>(l) / rd;
        param[0] = static_cast<double>(i);
        param[1] = static_cast<double>(j);
        param[2] = static_cast<double>(l);
        visit(std::span<const double>(point, 3), std::span<const double>(param, 3));
      }
    }
  }
}

}  // namespace

FiniteSet::FiniteSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("finite set must be nonempty");
  require_uniform_dim(points_, "finite set");
  const auto order = coordinate_order(points_);
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points_[order[i]] == points_[order[i - 1]]) {
      throw InvalidArgument("finite set contains duplicate point " +
                            to_string(points_[order[i]]));
    }
  }
}

FiniteSet::FiniteSet(std::initializer_list<Point> points)
    : FiniteSet(std::vector<Point>(points)) {}

VPolytope::VPolytope(std::vector<Point> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw InvalidArgument("polytope needs at least one generator");
  require_uniform_dim(columns_, "polytope generators");
}

PolyPath::PolyPath(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw InvalidArgument("path needs at least two vertices");
  require_uniform_dim(vertices_, "path vertices");
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i] == vertices_[i - 1]) {
      throw InvalidArgument("consecutive path vertices must differ");
    }
  }
}

Point path_point(const PolyPath& path, std::size_t seg, double lambda) {
  if (seg >= path.segments()) {
    throw IndexOutOfRange("segment " + std::to_string(seg) + " of a path with " +
                          std::to_string(path.segments()) + " segments");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidArgument("lambda must lie in [0, 1]");
  }
  const auto& near = path.vertices()[seg];
  const auto& far = path.vertices()[seg + 1];
  std::vector<double> out(near.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = lambda * far[i] + (1.0 - lambda) * near[i];
  }
  return Point(std::move(out));
}

Point polytope_point(const VPolytope& poly, std::span<const double> q) {
  if (q.size() != poly.cols()) {
    throw DimensionMismatch("weight vector has " + std::to_string(q.size()) +
                            " entries, polytope has " + std::to_string(poly.cols()) +
                            " generators");
  }
  double total = 0.0;
  for (double w : q) {
    if (!(w >= -kTol)) throw InvalidArgument("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kTol) throw InvalidArgument("weights must sum to 1");
  std::vector<double> out(poly.rows(), 0.0);
  for (std::size_t c = 0; c < poly.cols(); ++c) {
    for (std::size_t r = 0; r < poly.rows(); ++r) out[r] += q[c] * poly.at(r, c);
  }
  return Point(std::move(out));
}

double curved_x2_bound(double x1, double x3) {
  return std::sqrt(std::max(0.0, (-x1) * (1.0 - x3)));
}

bool curved_membership(std::span<const double> x, double tol) {
  if (x.size() != 3) throw DimensionMismatch("curved set lives in R^3");
  const bool in_box = x[0] >= -1.0 - tol && x[0] <= tol && x[1] >= -tol &&
                      x[1] <= 1.0 + tol && x[2] >= -tol && x[2] <= 1.0 + tol;
  return in_box && x[0] * (x[2] - 1.0) >= x[1] * x[1] - tol;
}

bool curved_membership(const Point& x) { return curved_membership(x.coords(), kTol); }

std::size_t dimension(const GroundSet& set) {
  return std::visit(overloaded{[](const FiniteSet& s) { return s.dim(); },
                               [](const VPolytope& s) { return s.rows(); },
                               [](const PolyPath& s) { return s.dim(); },
                               [](const CurvedSet3&) { return std::size_t{3}; }},
                    set);
}

std::vector<Point> generators(const GroundSet& set) {
  return std::visit(
      overloaded{[](const FiniteSet& s) { return s.points(); },
                 [](const VPolytope& s) { return s.columns(); },
                 [](const PolyPath& s) { return s.vertices(); },
                 [](const CurvedSet3&) {
                   return std::vector<Point>{Point{-1.0, 0.0, 0.0}, Point{0.0, 0.0, 1.0},
                                             Point{-1.0, 1.0, 0.0}};
                 }},
      set);
}

double set_linf_bound(const GroundSet& set) { return linf_bound(generators(set)); }

bool contains(const GroundSet& set, const Point& x, double tol) {
  if (x.dim() != dimension(set)) return false;
  return std::visit(
      overloaded{
          [&](const FiniteSet& s) {
            return std::any_of(s.points().begin(), s.points().end(), [&](const Point& p) {
              return linf_distance(p.coords(), x.coords()) <= tol;
            });
          },
          [](const VPolytope&) { return true; },
          [&](const PolyPath& s) {
            for (std::size_t seg = 0; seg < s.segments(); ++seg) {
              const auto& a = s.vertices()[seg];
              const auto& b = s.vertices()[seg + 1];
              double num = 0.0;
              double den = 0.0;
              for (std::size_t i = 0; i < x.dim(); ++i) {
                num += (x[i] - a[i]) * (b[i] - a[i]);
                den += (b[i] - a[i]) * (b[i] - a[i]);
              }
              const double lambda = std::clamp(num / den, 0.0, 1.0);
              const Point p = path_point(s, seg, lambda);
              if (linf_distance(p.coords(), x.coords()) <= tol) return true;
            }
            return false;
          },
          [&](const CurvedSet3&) { return curved_membership(x.coords(), tol); }},
      set);
}

std::size_t grid_size(const GroundSet& set, std::size_t resolution) {
  if (resolution == 0) throw InvalidArgument("grid resolution must be positive");
  return std::visit(
      overloaded{
          [](const FiniteSet& s) { return s.size(); },
          [&](const VPolytope& s) {
            const double count = binomial(resolution + s.cols() - 1, s.cols() - 1);
            if (count > static_cast<double>(std::numeric_limits<std::size_t>::max() / 2)) {
              return std::numeric_limits<std::size_t>::max() / 2;
            }
            return static_cast<std::size_t>(count);
          },
          [&](const PolyPath& s) { return s.segments() * resolution + 1; },
          [&](const CurvedSet3&) {
            std::size_t count = 0;
            const double rd = static_cast<double>(resolution);
            for (std::size_t i = 0; i <= resolution; ++i) {
              for (std::size_t l = 0; l <= resolution; ++l) {
                const double b = curved_x2_bound(-static_cast<double>(resolution - i) / rd,
                                                 static_cast<double>(l) / rd);
                const std::size_t j = lattice_floor(b, resolution);
                count += j + 1;
                if (j < resolution && b - static_cast<double>(j) / rd > kTol) ++count;
              }
            }
            return count;
          }},
      set);
}

double grid_spacing_error(const GroundSet& set, std::size_t resolution) {
  if (resolution == 0) throw InvalidArgument("grid resolution must be positive");
  const double r = static_cast<double>(resolution);
  return std::visit(
      overloaded{[](const FiniteSet&) { return 0.0; },
                 [&](const VPolytope& s) {
                   return max_row_range(s) * static_cast<double>(s.cols() / 2) / r;
                 },
                 [&](const PolyPath& s) {
                   double len = 0.0;
                   for (std::size_t seg = 0; seg < s.segments(); ++seg) {
                     len = std::max(len, segment_length(s, seg));
                   }
                   return len / r;
                 },
                 [&](const CurvedSet3&) { return 1.0 / r; }},
      set);
}

double grid_slack(const GroundSet& set, std::size_t resolution) {
  return 3.0 * grid_spacing_error(set, resolution);
}

std::size_t resolution_for_spacing(const GroundSet& set, double target) {
  const double unit = grid_spacing_error(set, 1);
  if (unit == 0.0) return 1;
  if (!(target > 0.0)) {
    throw BudgetExceeded("a continuous set needs a positive spacing target");
  }
  const double r = std::ceil(unit / target - 1e-9);
  if (r > 1e12) throw BudgetExceeded("spacing target too small");
  return std::max<std::size_t>(1, static_cast<std::size_t>(r));
}

void for_each_grid_point(const GroundSet& set, std::size_t resolution,
                         const GridVisitor& visit) {
  if (resolution == 0) throw InvalidArgument("grid resolution must be positive");
  std::visit(
      overloaded{
          [&](const FiniteSet& s) {
            double idx = 0.0;
            for (const auto& p : s.points()) {
              visit(p.coords(), std::span<const double>(&idx, 1));
              idx += 1.0;
            }
          },
          [&](const VPolytope& s) { visit_simplex_lattice(s, resolution, visit); },
          [&](const PolyPath& s) {
            const std::size_t n = s.dim();
            std::vector<double> point(n);
            double param[2];
            const double rd = static_cast<double>(resolution);
            for (std::size_t seg = 0; seg < s.segments(); ++seg) {
              const auto& near = s.vertices()[seg];
              const auto& far = s.vertices()[seg + 1];
              for (std::size_t t = (seg == 0 ? 0 : 1); t <= resolution; ++t) {
                const double lambda = static_cast<double>(t) / rd;
                for (std::size_t i = 0; i < n; ++i) {
                  point[i] = lambda * far[i] + (1.0 - lambda) * near[i];
                }
                param[0] = static_cast<double>(seg);
                param[1] = lambda;
                visit(point, std::span<const double>(param, 2));
              }
            }
          },
          [&](const CurvedSet3&) { visit_curved(resolution, visit); }},
      set);
}

FiniteSet enumerate_grid(const GroundSet& set, std::size_t resolution, std::size_t cap) {
  if (resolution == 0) throw InvalidArgument("grid resolution must be positive");
  if (const auto* finite = std::get_if<FiniteSet>(&set)) return *finite;
  const std::size_t size = grid_size(set, resolution);
  if (size > cap) {
    throw BudgetExceeded("grid of " + std::to_string(size) +
                         " points exceeds the cap of " + std::to_string(cap));
  }
  std::vector<Point> pts;
  pts.reserve(size);
  for_each_grid_point(set, resolution, [&](std::span<const double> p, auto) {
    pts.emplace_back(p);
  });
  // Degenerate generator sets can map distinct weights to the same point.
  const auto order = coordinate_order(pts);
  std::vector<char> keep(pts.size(), 1);
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (pts[order[i]] == pts[order[i - 1]]) {
      keep[std::max(order[i], order[i - 1])] = 0;
    }
  }
  std::vector<Point> unique;
  unique.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (keep[i]) unique.push_back(std::move(pts[i]));
  }
  return FiniteSet(std::move(unique));
}

}  // namespace lexopt
