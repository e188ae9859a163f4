#pragma once

// Brute-force reference computations used by the acceptance harness. They
// deliberately avoid the library's own solvers.

#include <cstddef>
#include <vector>

namespace lexopt::oracle {

using Vec = std::vector<double>;

Vec sorted(Vec x);

/// Indices i whose sorted view is >= every other sorted view.
std::vector<std::size_t> lexmax_indices(const std::vector<Vec>& pts);

/// sup of sigma_k(z) over z with sigma_i(z) >= sigma_i(x) for i < k (1-based k).
double round_sup(const std::vector<Vec>& pts, const Vec& x, std::size_t k);

/// Naive (1/c) log sum_i exp(-c (Mq)_i); `cols` holds the columns of M.
double potential(const std::vector<Vec>& cols, const Vec& q, double c);

/// Minimum of the potential over the simplex: dense lattice, then pairwise
/// line searches until nothing moves.
double min_potential(const std::vector<Vec>& cols, double c);

struct CurvedSups {
  double eps;
  double sup1;  // sigma_1 over X
  double sup2;  // sigma_2 over z with sigma_1(z) >= sigma_1(x_eps)
  double sup3;  // sigma_3 over z with sigma_{1,2}(z) >= sigma_{1,2}(x_eps)
};

/// Grid search of the curved set at `r` steps per axis, plus the boundary
/// point of every (x1, x3) column.
std::vector<CurvedSups> curved_sups(std::size_t r, const std::vector<double>& eps_list);

}  // namespace lexopt::oracle
