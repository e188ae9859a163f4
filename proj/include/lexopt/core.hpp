#pragma once

// Sorting functions, the lexicographic order on sorted views, and the
// distortion measure shared by every other part of the library.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lexopt {

/// Absolute tolerance used for real comparisons across the library.
inline constexpr double kTol = 1e-12;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct IndexOutOfRange : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};
struct Infeasible : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
struct Overflow : Error {
  using Error::Error;
};

/// A vector in R^n with n >= 1 and only finite coordinates.
class Point {
 public:
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& values() const { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Non-decreasing rearrangement of a point. `source_perm[i]` is the original
/// (0-based) index of the i-th smallest coordinate; ties keep original order.
struct SortedView {
  std::vector<double> values;
  std::vector<std::size_t> source_perm;
};

/// A nonempty subset of {1..n} (1-based, as in the sorting-function index).
class IndexSet {
 public:
  IndexSet(std::initializer_list<std::size_t> members);
  explicit IndexSet(std::vector<std::size_t> members);
  static IndexSet all(std::size_t n);
  static IndexSet single(std::size_t k) { return IndexSet{k}; }

  const std::vector<std::size_t>& members() const { return members_; }
  bool contains(std::size_t k) const;
  bool empty() const { return members_.empty(); }
  std::size_t max() const { return members_.empty() ? 0 : members_.back(); }

 private:
  std::vector<std::size_t> members_;
};

SortedView sort_components(const Point& x);

/// Sorted copy of raw coordinates (no permutation bookkeeping).
std::vector<double> sorted_values(std::span<const double> x);

/// k-th smallest coordinate, k in [1, n].
double sigma(const Point& x, std::size_t k);

/// x >=_sigma y: sorted views equal, or x wins at the first sorted position
/// where they differ.
bool lex_ge(const Point& x, const Point& y);

/// Three-way comparison of two already-sorted vectors of equal length.
/// Returns -1, 0, or 1.
int lex_compare_sorted(std::span<const double> a, std::span<const double> b);

/// All lexicographic maxima of a nonempty finite list.
std::vector<Point> lexmax_finite(std::span<const Point> points);

/// max over k in I of max{0, sigma_k(x_star) - sigma_k(x)}. Not symmetric.
double distortion(const Point& x_star, const Point& x, const IndexSet& indices);
double distortion(const Point& x_star, const Point& x);
double distortion_sorted(std::span<const double> star_sorted,
                         std::span<const double> x_sorted,
                         const IndexSet& indices);

/// Largest |x_i| over the given points.
double linf_bound(std::span<const Point> points);

double linf_distance(std::span<const double> a, std::span<const double> b);

std::string to_string(const Point& x);

}  // namespace lexopt
