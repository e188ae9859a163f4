#include "lexopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace lexopt {

namespace {

void validate(const std::vector<double>& coords) {
  if (coords.empty()) {
    throw InvalidArgument("point must have at least one coordinate");
  }
  for (double v : coords) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("point coordinates must be finite");
    }
  }
}

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("points have dimensions " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()));
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  validate(coords_);
}

Point::Point(std::initializer_list<double> coords) : coords_(coords) {
  validate(coords_);
}

Point::Point(std::span<const double> coords)
    : coords_(coords.begin(), coords.end()) {
  validate(coords_);
}

IndexSet::IndexSet(std::initializer_list<std::size_t> members)
    : IndexSet(std::vector<std::size_t>(members)) {}

IndexSet::IndexSet(std::vector<std::size_t> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.front() == 0) {
    throw IndexOutOfRange("index sets are 1-based");
  }
}

IndexSet IndexSet::all(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{1});
  return IndexSet(std::move(m));
}

bool IndexSet::contains(std::size_t k) const {
  return std::binary_search(members_.begin(), members_.end(), k);
}

SortedView sort_components(const Point& x) {
  SortedView view;
  view.source_perm.resize(x.dim());
  std::iota(view.source_perm.begin(), view.source_perm.end(), std::size_t{0});
  std::stable_sort(view.source_perm.begin(), view.source_perm.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  view.values.reserve(x.dim());
  for (std::size_t i : view.source_perm) view.values.push_back(x[i]);
  return view;
}

std::vector<double> sorted_values(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  return v;
}

double sigma(const Point& x, std::size_t k) {
  if (k < 1 || k > x.dim()) {
    throw IndexOutOfRange("sigma index " + std::to_string(k) +
                          " outside [1, " + std::to_string(x.dim()) + "]");
  }
  std::vector<double> v = x.values();
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   v.end());
  return v[k - 1];
}

int lex_compare_sorted(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

bool lex_ge(const Point& x, const Point& y) {
  require_same_dim(x, y);
  const auto sx = sorted_values(x.coords());
  const auto sy = sorted_values(y.coords());
  return lex_compare_sorted(sx, sy) >= 0;
}

std::vector<Point> lexmax_finite(std::span<const Point> points) {
  if (points.empty()) throw InvalidArgument("lexmax of an empty list");
  const std::size_t n = points.front().dim();
  std::vector<std::vector<double>> sorted;
  sorted.reserve(points.size());
  for (const auto& p : points) {
    if (p.dim() != n) throw DimensionMismatch("points of mixed dimension");
    sorted.push_back(sorted_values(p.coords()));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (lex_compare_sorted(sorted[i], sorted[best]) > 0) best = i;
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (lex_compare_sorted(sorted[i], sorted[best]) == 0) out.push_back(points[i]);
  }
  return out;
}

double distortion_sorted(std::span<const double> star_sorted,
                         std::span<const double> x_sorted,
                         const IndexSet& indices) {
  if (indices.empty()) throw InvalidArgument("distortion over an empty index set");
  if (indices.max() > star_sorted.size()) {
    throw IndexOutOfRange("distortion index exceeds dimension");
  }
  double d = 0.0;
  for (std::size_t k : indices.members()) {
    d = std::max(d, star_sorted[k - 1] - x_sorted[k - 1]);
  }
  return d;
}

double distortion(const Point& x_star, const Point& x, const IndexSet& indices) {
  require_same_dim(x_star, x);
  return distortion_sorted(sorted_values(x_star.coords()),
                           sorted_values(x.coords()), indices);
}

double distortion(const Point& x_star, const Point& x) {
  return distortion(x_star, x, IndexSet::all(x_star.dim()));
}

double linf_bound(std::span<const Point> points) {
  if (points.empty()) throw InvalidArgument("norm bound of an empty list");
  double m = 0.0;
  for (const auto& p : points) {
    for (double v : p.coords()) m = std::max(m, std::abs(v));
  }
  return m;
}

double linf_distance(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::string to_string(const Point& x) {
  std::string s = "(";
  char buf[32];
  for (std::size_t i = 0; i < x.dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", x[i] == 0.0 ? 0.0 : x[i]);
    if (i) s += ",";
    s += buf;
  }
  return s + ")";
}

}  // namespace lexopt
