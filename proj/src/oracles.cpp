#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace lexopt::oracle {

Vec sorted(Vec x) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    for (std::size_t j = i; j > 0 && x[j - 1] > x[j]; --j) std::swap(x[j - 1], x[j]);
  }
  return x;
}

namespace {

// a >= b in the order on sorted views.
bool sorted_ge(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return true;
    if (a[i] < b[i]) return false;
  }
  return true;
}

Vec image(const std::vector<Vec>& cols, const Vec& q) {
  Vec y(cols.front().size(), 0.0);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < y.size(); ++r) y[r] += q[c] * cols[c][r];
  }
  return y;
}

// Ternary search on a convex function of t in [lo, hi].
double line_min(const std::function<double(double)>& f, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) <= f(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<std::size_t> lexmax_indices(const std::vector<Vec>& pts) {
  std::vector<Vec> s;
  for (const auto& p : pts) s.push_back(sorted(p));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool top = true;
    for (std::size_t j = 0; j < s.size() && top; ++j) top = sorted_ge(s[i], s[j]);
    if (top) out.push_back(i);
  }
  return out;
}

double round_sup(const std::vector<Vec>& pts, const Vec& x, std::size_t k) {
  const Vec sx = sorted(x);
  double sup = -std::numeric_limits<double>::infinity();
  for (const auto& z : pts) {
    const Vec sz = sorted(z);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < k; ++i) ok = ok && sz[i] >= sx[i];
    if (ok && sz[k - 1] > sup) sup = sz[k - 1];
  }
  return sup;
}

double potential(const std::vector<Vec>& cols, const Vec& q, double c) {
  const Vec y = image(cols, q);
  double sum = 0.0;
  for (double v : y) sum += std::exp(-c * v);
  return std::log(sum) / c;
}

double min_potential(const std::vector<Vec>& cols, double c) {
  const std::size_t n = cols.size();
  std::size_t r = 1;
  auto lattice_size = [&](std::size_t res) {
    double count = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
      count = count * static_cast<double>(res + i) / static_cast<double>(i);
    }
    return count;
  };
  while (r < 200 && lattice_size(r + 1) <= 60000.0) ++r;

  Vec best_q(n, 0.0);
  double best = std::numeric_limits<double>::infinity();
  Vec q(n, 0.0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
    if (pos + 1 == n) {
      q[pos] = static_cast<double>(left) / static_cast<double>(r);
      const double v = potential(cols, q, c);
      if (v < best) {
        best = v;
        best_q = q;
      }
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      q[pos] = static_cast<double>(k) / static_cast<double>(r);
      rec(pos + 1, left - k);
    }
  };
  rec(0, r);

  q = best_q;
  for (int sweep = 0; sweep < 500; ++sweep) {
    const double before = best;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const double total = q[a] + q[b];
        if (total <= 0.0) continue;
        auto f = [&](double t) {
          Vec w = q;
          w[a] = t;
          w[b] = total - t;
          return potential(cols, w, c);
        };
        const double t = line_min(f, 0.0, total);
        const double v = f(t);
        if (v < best) {
          best = v;
          q[a] = t;
          q[b] = total - t;
        }
      }
    }
    if (before - best < 1e-15) break;
  }
  return best;
}

std::vector<CurvedSups> curved_sups(std::size_t r, const std::vector<double>& eps_list) {
  std::vector<CurvedSups> out;
  const double ninf = -std::numeric_limits<double>::infinity();
  for (double e : eps_list) out.push_back({e, ninf, ninf, ninf});
  const double rd = static_cast<double>(r);
  auto visit = [&](double x1, double x2, double x3) {
    const Vec s = sorted({x1, x2, x3});
    for (auto& o : out) {
      const double f1 = -o.eps * o.eps;
      const double f2 = o.eps / 2.0;
      // Sorted view of the witness is (-eps^2, eps/2, 3/4).
      o.sup1 = std::max(o.sup1, s[0]);
      if (s[0] >= f1) o.sup2 = std::max(o.sup2, s[1]);
      if (s[0] >= f1 && s[1] >= f2) o.sup3 = std::max(o.sup3, s[2]);
    }
  };
  for (std::size_t i = 0; i <= r; ++i) {
    const double x1 = -static_cast<double>(i) / rd;
    for (std::size_t l = 0; l <= r; ++l) {
      const double x3 = static_cast<double>(l) / rd;
      const double top = std::sqrt(x1 * (x3 - 1.0));
      for (std::size_t j = 0; j <= r; ++j) {
        const double x2 = static_cast<double>(j) / rd;
        if (x2 * x2 > x1 * (x3 - 1.0)) break;
        visit(x1, x2, x3);
      }
      visit(x1, std::min(top, 1.0), x3);
    }
  }
  return out;
}

}  // namespace lexopt::oracle
