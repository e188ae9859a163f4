#pragma once

// Reference computations for the unit tests. Each is written the slow, obvious
// way and shares no code with the library.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline Vec sorted(Vec x) {
  // selection sort
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t m = i;
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[j] < x[m]) m = j;
    }
    std::swap(x[i], x[m]);
  }
  return x;
}

// a >=_sigma b
inline bool lex_ge(const Vec& a, const Vec& b) {
  const Vec sa = sorted(a);
  const Vec sb = sorted(b);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i] != sb[i]) return sa[i] > sb[i];
  }
  return true;
}

inline std::vector<Vec> lexmax(const std::vector<Vec>& pts) {
  std::vector<Vec> out;
  for (const auto& p : pts) {
    bool top = true;
    for (const auto& q : pts) top = top && lex_ge(p, q);
    if (top) out.push_back(p);
  }
  return out;
}

inline double distortion(const Vec& star, const Vec& x, const std::vector<std::size_t>& I) {
  const Vec a = sorted(star);
  const Vec b = sorted(x);
  double d = 0.0;
  for (std::size_t k : I) d = std::max(d, a[k - 1] - b[k - 1]);
  return d;
}

inline double loss(const Vec& x, double c) {
  double s = 0.0;
  for (double v : x) s += std::exp(-c * v);
  return s;
}

// sup sigma_k(z) over z in pts with sigma_i(z) >= sigma_i(x), i < k
inline double round_sup(const std::vector<Vec>& pts, const Vec& x, std::size_t k) {
  const Vec sx = sorted(x);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& z : pts) {
    const Vec sz = sorted(z);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < k; ++i) ok = ok && sz[i] >= sx[i];
    if (ok) best = std::max(best, sz[k - 1]);
  }
  return best;
}

// Possible-output test, straight from its characterization.
inline bool possible_output(const std::vector<Vec>& pts, const Vec& x, double eps) {
  const Vec sx = sorted(x);
  for (std::size_t k = 1; k <= x.size(); ++k) {
    if (sx[k - 1] < round_sup(pts, x, k) - eps) return false;
  }
  return true;
}

// Potential (1/c) log sum exp(-c (Mq)_i) with columns `cols`.
inline double potential(const std::vector<Vec>& cols, const Vec& q, double c) {
  Vec y(cols[0].size(), 0.0);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += q[j] * cols[j][i];
  }
  double s = 0.0;
  for (double v : y) s += std::exp(-c * v);
  return std::log(s) / c;
}

inline std::vector<Vec> random_points(std::mt19937_64& rng, std::size_t n, std::size_t count,
                                      double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Vec> out(count, Vec(n));
  for (auto& p : out) {
    for (double& v : p) v = u(rng);
  }
  return out;
}

}  // namespace oracle
