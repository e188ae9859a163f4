#include "lexopt/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "lexopt/csv.hpp"
#include "lexopt/lab.hpp"
#include "oracles.hpp"

namespace lexopt {

namespace {

using Vec = std::vector<double>;

constexpr double kCheckTol = 1e-9;

// Small CSV table builder.
class Table {
 public:
  explicit Table(const std::string& header) { out_ << header << '\n'; }

  template <class... Cells>
  void row(const Cells&... cells) {
    std::size_t i = 0;
    ((out_ << (i++ ? "," : "") << cell(cells)), ...);
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(bool v) { return v ? "true" : "false"; }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  std::ostringstream out_;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

std::size_t uniform_int(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<Vec> as_vecs(const std::vector<Point>& pts) {
  std::vector<Vec> out;
  for (const auto& p : pts) out.push_back(p.values());
  return out;
}

// Finite sets with integer coordinates in {0..3}: many ties in sorted views.
FiniteSet small_integer_set(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::size_t limit = 1;
  for (std::size_t i = 0; i < n && limit < count; ++i) limit *= 4;
  count = std::min(count, limit);
  std::vector<Point> pts;
  while (pts.size() < count) {
    Vec v(n);
    for (double& x : v) x = static_cast<double>(uniform_int(rng, 0, 3));
    Point p(std::move(v));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return FiniteSet(std::move(pts));
}

std::vector<FiniteSet> finite_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 4);
  std::vector<FiniteSet> out;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = uniform_int(rng, 2, 5);
    const std::size_t count = uniform_int(rng, 2, 50);
    out.push_back(random_finite_set(rng, n, count));
  }
  return out;
}

std::vector<VPolytope> polytope_corpus(std::uint64_t seed, std::size_t count,
                                       std::size_t max_rows, std::size_t max_cols) {
  std::mt19937_64 rng(seed);
  std::vector<VPolytope> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t m = uniform_int(rng, 2, max_rows);
    const std::size_t cols = uniform_int(rng, 2, max_cols);
    out.push_back(random_polytope(rng, m, cols));
  }
  return out;
}

std::vector<VPolytope> matrix_corpus(std::uint64_t seed) {
  return polytope_corpus(seed + 7, 50, 6, 6);
}

// Largest resolution (at most `max_r`) whose grid stays under `max_points`.
std::size_t adaptive_resolution(const GroundSet& set, std::size_t max_points,
                                std::size_t max_r) {
  std::size_t r = 1;
  while (r < max_r && grid_size(set, r + 1) <= max_points) ++r;
  return r;
}

// Indices of points whose loss is within gamma exp(-c norm) of the smallest.
std::vector<std::size_t> near_minimizers(const std::vector<Point>& pts, double c, double gamma,
                                         double norm) {
  std::vector<ScaledLoss> losses;
  for (const auto& p : pts) losses.push_back(exp_loss_scaled(p.coords(), c));
  const ScaledLoss& inf = losses[argmin_loss(pts, c)];
  const double rel_thr = gamma * std::exp(-c * norm - inf.log_scale);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double rel = losses[i].mantissa * std::exp(losses[i].log_scale - inf.log_scale);
    if (rel <= inf.mantissa + rel_thr) out.push_back(i);
  }
  return out;
}

double log_ratio_bound(std::size_t n, std::size_t k, double c, double gamma) {
  return std::log(static_cast<double>(n - k + 1) / (1.0 - gamma)) / c;
}

CriterionResult equivalence(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1);
  Table t("set_id,n,points,admissible,lexmax,oracle_lexmax,pass");
  std::size_t failures = 0;
  for (std::size_t id = 0; id < 200; ++id) {
    const std::size_t n = uniform_int(rng, 1, 5);
    const std::size_t count = uniform_int(rng, 1, 50);
    const FiniteSet set = id % 2 ? small_integer_set(rng, n, count)
                                 : random_finite_set(rng, n, count);
    const auto admissible = possible_output_set(set, 0.0).points();
    const auto lexmax = lexmax_finite(set.points());
    std::vector<Point> reference;
    for (std::size_t i : oracle::lexmax_indices(as_vecs(set.points()))) {
      reference.push_back(set.points()[i]);
    }
    const bool pass = admissible == lexmax && lexmax == reference;
    failures += !pass;
    t.row(id, n, set.size(), admissible.size(), lexmax.size(), reference.size(), pass);
  }
  return {"equivalence", failures == 0,
          std::to_string(200 - failures) + "/200 sets with A(X,0) = lexmax X", t.str()};
}

CriterionResult sharp_lower(std::uint64_t) {
  Table t("check,n,c,segment,lambda,value,reference,pass");
  bool ok = true;
  double worst = 1.0;
  for (std::size_t n : {8u, 12u}) {
    const auto pts = sharp_lower_points(n);
    const PolyPath path = make_sharp_lower_set(n);
    for (double c : {2.0, 4.0, 8.0, 16.0}) {
      const auto pm = path_minimizer(path, c);
      const double d = distortion(pts.x_star, pm.x, IndexSet::single(n));
      const bool pass = d >= 0.5 - kCheckTol;
      ok = ok && pass;
      worst = std::min(worst, d);
      t.row("d_n", n, c, pm.segment, pm.lambda, d, 0.5, pass);
    }
    const double nd = static_cast<double>(n);
    const double l_dprime = exp_loss(pts.x_dprime, 2.0);
    const double l_star = exp_loss(pts.x_star, 2.0);
    const double ref_dprime = std::exp(1.0) + (nd - 2.0) * std::exp(-0.5) + std::exp(-1.0);
    const double ref_star = (nd - 1.0) + std::exp(-2.0);
    const bool match = std::abs(l_dprime - ref_dprime) <= 1e-12 * ref_dprime &&
                       std::abs(l_star - ref_star) <= 1e-12 * ref_star;
    const bool order = l_dprime < l_star;
    bool quoted = true;
    if (n == 8) {
      quoted = std::abs(l_dprime - 6.72535) < 5e-6 && std::abs(l_star - 7.13534) < 5e-6;
    }
    ok = ok && match && order && quoted;
    t.row("loss_xdprime", n, 2.0, 0, 0.0, l_dprime, ref_dprime, match && quoted);
    t.row("loss_xstar", n, 2.0, 0, 0.0, l_star, ref_star, match && quoted);
    t.row("loss_order", n, 2.0, 0, 0.0, l_dprime - l_star, 0.0, order);
  }
  return {"sharp_lower", ok, fmt("min d_n over the grid = %.6g (need >= 0.5)", worst), t.str()};
}

CriterionResult rate_lower(std::uint64_t) {
  std::vector<ExperimentRecord> all;
  bool ok = true;
  double worst_margin = 1.0;
  double worst_eq = 0.0;
  const double beta = 2.0 / 3.0;
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{3, 3}, {5, 4}}) {
    for (double a : {1.0, 2.0, 4.0}) {
      const auto pts = rate_segment_points(n, k, a);
      const double back = std::log((2.0 * beta - 1.0 - pts.eps) / pts.eps) / beta;
      worst_eq = std::max(worst_eq, std::abs(back - a));
      ConvergenceOptions opt;
      opt.name = "rate_n" + std::to_string(n) + "_k" + std::to_string(k);
      opt.x_star = pts.x_star;
      opt.k = k;
      opt.bound = BoundKind::rate_lower;
      opt.a = a;
      auto recs = convergence_curve(make_rate_segment(n, k, a), {0.5, 1, 2, 4, 8, 16}, 0.0,
                                    SolveBudget{}, opt);
      for (const auto& r : recs) {
        ok = ok && r.pass;
        worst_margin = std::min(worst_margin, r.d_k - r.bound);
      }
      all.insert(all.end(), recs.begin(), recs.end());
    }
  }
  ok = ok && worst_eq <= 1e-12;
  std::ostringstream csv;
  write_records(csv, all);
  return {"rate_lower", ok,
          fmt("min (d_k - bound) = %.3g; eps back-substitution error %.2g", worst_margin,
              worst_eq),
          csv.str()};
}

CriterionResult upper_bound(std::uint64_t seed) {
  Table t("kind,set_id,n,c,gamma,k,near_minimizers,worst_gap,bound,allowance,pass");
  bool ok = true;
  double worst = -1e300;
  const auto corpus = finite_corpus(seed);
  for (std::size_t id = 0; id < corpus.size(); ++id) {
    const auto& set = corpus[id];
    const Point x_star = lexmax_finite(set.points()).front();
    const double norm = linf_bound(set.points());
    for (double gamma : {0.0, 0.5}) {
      for (double c : {1.0, 5.0, 25.0}) {
        const auto near = near_minimizers(set.points(), c, gamma, norm);
        for (std::size_t k : {1u, 2u}) {
          double gap = -1e300;
          for (std::size_t i : near) {
            gap = std::max(gap, sigma(x_star, k) - sigma(set.points()[i], k));
          }
          const double bound = log_ratio_bound(set.dim(), k, c, gamma);
          const bool pass = gap <= bound + kCheckTol;
          ok = ok && pass;
          worst = std::max(worst, gap - bound);
          t.row("finite", id, set.dim(), c, gamma, k, near.size(), gap, bound, 0.0, pass);
        }
      }
    }
  }
  const auto polys = polytope_corpus(seed + 40, 20, 4, 5);
  for (std::size_t id = 0; id < polys.size(); ++id) {
    const GroundSet set = polys[id];
    const std::size_t r = adaptive_resolution(set, 50000, 100);
    const FiniteSet grid = enumerate_grid(set, r);
    const double slack = grid_slack(set, r);
    const Point x_star = lexmax_finite(grid.points()).front();
    const double norm = set_linf_bound(set);
    for (double gamma : {0.0, 0.5}) {
      for (double c : {1.0, 5.0, 25.0}) {
        auto near = near_minimizers(grid.points(), c, gamma, norm);
        std::vector<Point> tested;
        for (std::size_t i : near) tested.push_back(grid.points()[i]);
        tested.push_back(near_minimizer(set, LossParams{c, gamma}, SolveBudget{r}));
        for (std::size_t k : {1u, 2u}) {
          double gap = -1e300;
          for (const auto& x : tested) gap = std::max(gap, sigma(x_star, k) - sigma(x, k));
          const double bound = log_ratio_bound(grid.dim(), k, c, gamma);
          const bool pass = gap <= bound + 2.0 * slack + kCheckTol;
          ok = ok && pass;
          worst = std::max(worst, gap - bound - 2.0 * slack);
          t.row("polytope", id, grid.dim(), c, gamma, k, tested.size(), gap, bound,
                2.0 * slack, pass);
        }
      }
    }
  }
  return {"upper_bound", ok,
          fmt("max (gap - bound - allowance) = %.3g over 100 finite sets and 20 polytopes",
              worst),
          t.str()};
}

CriterionResult near_min_band(std::uint64_t seed) {
  Table t("set_id,n,c,gamma,near_minimizers,worst_margin,pass");
  bool ok = true;
  double worst = 1e300;
  const auto corpus = finite_corpus(seed);
  for (std::size_t id = 0; id < corpus.size(); ++id) {
    const auto& set = corpus[id];
    const auto pts = as_vecs(set.points());
    const double norm = linf_bound(set.points());
    for (double gamma : {0.0, 0.5}) {
      for (double c : {1.0, 5.0, 25.0}) {
        const auto near = near_minimizers(set.points(), c, gamma, norm);
        double margin = 1e300;
        for (std::size_t i : near) {
          const auto s = oracle::sorted(pts[i]);
          for (std::size_t k = 1; k <= set.dim(); ++k) {
            const double rhs =
                oracle::round_sup(pts, pts[i], k) - log_ratio_bound(set.dim(), k, c, gamma);
            margin = std::min(margin, s[k - 1] - rhs);
          }
        }
        const bool pass = margin >= -kCheckTol;
        ok = ok && pass;
        worst = std::min(worst, margin);
        t.row(id, set.dim(), c, gamma, near.size(), margin, pass);
      }
    }
  }
  return {"near_min_band", ok, fmt("min margin = %.3g over all sets, c, gamma, k", worst),
          t.str()};
}

CriterionResult curved(std::uint64_t) {
  Table t("eps,x1,x2,x3,member,possible_output,distortion,sup1,sup2,sup3,pass");
  const std::vector<double> eps_list{0.5, 0.1, 0.02};
  const auto sups = oracle::curved_sups(400, eps_list);
  const GroundSet set = CurvedSet3{};
  bool ok = true;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const double e = eps_list[i];
    const Point x = curved_witness(e);
    const bool member = curved_membership(x);
    const bool admissible = is_possible_output(set, x, e, SolveBudget{100});
    const double d = distortion(curved_lexmax(), x);
    const auto& s = sups[i];
    const bool pass = member && admissible && d >= 0.25 - kCheckTol &&
                      std::abs(s.sup1) <= kTol && s.sup2 <= e + kTol && s.sup3 <= 0.75 + kTol;
    ok = ok && pass;
    t.row(e, x[0], x[1], x[2], member, admissible, d, s.sup1, s.sup2, s.sup3, pass);
  }
  return {"curved", ok, "x_eps admissible and 1/4 away from x* for eps in {0.5,0.1,0.02}",
          t.str()};
}

CriterionResult mw_fw(std::uint64_t seed) {
  Table t("matrix_id,m,cols,c,T,first_mismatch,max_p_diff,default_start_agrees,pass");
  bool ok = true;
  double worst = 0.0;
  std::size_t default_agree = 0;
  const auto corpus = matrix_corpus(seed);
  for (std::size_t id = 0; id < corpus.size(); ++id) {
    const auto& poly = corpus[id];
    for (double c : {1.0, 4.0}) {
      const auto fw = frank_wolfe(poly, c, 300, FwStart::uniform_p);
      const auto mw = multiplicative_weights(poly, Schedule::c_over_t, c, 300);
      const auto fw_default = frank_wolfe(poly, c, 300);
      int mismatch = -1;
      double pdiff = 0.0;
      for (std::size_t s = 0; s < 300; ++s) {
        if (mismatch < 0 && fw.vertices[s] != mw.vertices[s]) mismatch = static_cast<int>(s + 1);
        pdiff = std::max(pdiff, linf_distance(fw.p_iterates[s], mw.p_iterates[s]));
      }
      const bool agrees = fw_default.vertices == mw.vertices;
      default_agree += agrees;
      const bool pass = mismatch < 0 && pdiff <= 1e-12;
      ok = ok && pass;
      worst = std::max(worst, pdiff);
      t.row(id, poly.rows(), poly.cols(), c, 300, mismatch, pdiff, agrees, pass);
    }
  }
  return {"mw_fw", ok,
          fmt("q_t identical on 100 runs, max |p diff| = %.2g; uniform-average start agrees "
              "on %.0f/100",
              worst, static_cast<double>(default_agree)),
          t.str()};
}

CriterionResult gap_decay(std::uint64_t seed) {
  Table t("matrix_id,m,cols,c,h_min,gap_200,gap_2000,bound_200,bound_2000,pass");
  bool ok = true;
  double worst_ratio = 0.0;
  const auto corpus = matrix_corpus(seed);
  for (std::size_t id = 0; id < corpus.size(); ++id) {
    const auto& poly = corpus[id];
    const auto cols = as_vecs(poly.columns());
    for (double c : {1.0, 4.0}) {
      const double h_min = oracle::min_potential(cols, c);
      const auto run = frank_wolfe(poly, c, 2000);
      const double g200 = oracle::potential(cols, run.q_averages[199], c) - h_min;
      const double g2000 = oracle::potential(cols, run.q_averages[1999], c) - h_min;
      const double b200 = 10.0 * c * std::log(200.0) / 200.0;
      const double b2000 = 10.0 * c * std::log(2000.0) / 2000.0;
      const bool pass = g2000 <= g200 + 1e-12 && g200 <= b200 && g2000 <= b2000;
      ok = ok && pass;
      worst_ratio = std::max({worst_ratio, g200 / b200, g2000 / b2000});
      t.row(id, poly.rows(), poly.cols(), c, h_min, g200, g2000, b200, b2000, pass);
    }
  }
  return {"gap_decay", ok, fmt("max gap / (10 c log T / T) = %.3g", worst_ratio), t.str()};
}

CriterionResult constant_eta(std::uint64_t) {
  Table t("schedule,param,T,d_total,expected,pass");
  const auto pts = sharp_lower_points(8);
  const VPolytope poly({pts.x_dprime, pts.x_prime, pts.x_star});
  bool ok = true;
  std::string detail;
  auto measure = [&](Schedule s, double param) {
    const auto run = multiplicative_weights(poly, s, param, 5000);
    return distortion(pts.x_star, polytope_point(poly, run.q_average()));
  };
  for (double eta : {0.5, 1.0}) {
    const double d = measure(Schedule::constant, eta);
    const bool pass = d >= 0.25;
    ok = ok && pass;
    t.row("constant", eta, 5000, d, ">=0.25", pass);
    detail += fmt("eta=%.2g: d=%.4f; ", eta, d);
  }
  const double d = measure(Schedule::c_over_t, 16.0);
  const bool pass = d <= 0.1;
  ok = ok && pass;
  t.row("c/t", 16.0, 5000, d, "<=0.1", pass);
  detail += fmt("c/t with c=16: d=%.4f", d);
  return {"constant_eta", ok, detail, t.str()};
}

CriterionResult polytope_stability(std::uint64_t seed) {
  std::vector<ExperimentRecord> all;
  bool ok = true;
  std::size_t failing = 0;
  const std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
  const auto polys = polytope_corpus(seed + 10, 20, 3, 5);
  for (std::size_t id = 0; id < polys.size(); ++id) {
    const GroundSet set = polys[id];
    const std::size_t r = adaptive_resolution(set, 150000, 100);
    const double slack = grid_slack(set, r);
    const FiniteSet grid = enumerate_grid(set, r);
    StabilityOptions opt;
    opt.name = "poly" + std::to_string(id);
    opt.x_star = lexmax_finite(grid.points()).front();
    auto recs = stability_curve(grid, eps_list, SolveBudget{1}, opt);
    bool pass = recs.back().d_total <= 4.0 * slack + kCheckTol;
    for (std::size_t i = 1; i < recs.size(); ++i) {
      pass = pass && recs[i].d_total <= recs[i - 1].d_total + 2.0 * slack + kCheckTol;
    }
    for (auto& rec : recs) {
      rec.slack = slack;
      rec.pass = pass;
    }
    ok = ok && pass;
    failing += !pass;
    all.insert(all.end(), recs.begin(), recs.end());
  }
  std::ostringstream csv;
  write_records(csv, all);
  return {"polytope_stability", ok,
          std::to_string(20 - failing) + "/20 polytopes non-increasing and ending within 4x slack",
          csv.str()};
}

CriterionResult lipschitz(std::uint64_t seed) {
  Table t("n,pairs,max_ratio,worst_margin,pass");
  std::mt19937_64 rng(seed + 11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::map<std::size_t, std::tuple<std::size_t, double, double>> by_n;
  bool ok = true;
  for (int pair = 0; pair < 10000; ++pair) {
    const std::size_t n = uniform_int(rng, 1, 10);
    Vec a(n);
    Vec b(n);
    for (double& v : a) v = u(rng);
    for (double& v : b) v = u(rng);
    // Half of the pairs are small perturbations.
    if (pair % 2) {
      for (std::size_t i = 0; i < n; ++i) b[i] = a[i] + 1e-3 * b[i];
    }
    const Point x(a);
    const Point y(b);
    const double dist = linf_distance(a, b);
    auto& [count, ratio, margin] = by_n.try_emplace(n, 0, 0.0, 1e300).first->second;
    ++count;
    for (std::size_t k = 1; k <= n; ++k) {
      const double diff = std::abs(sigma(x, k) - sigma(y, k));
      ratio = std::max(ratio, diff / dist);
      margin = std::min(margin, 3.0 * dist - diff);
    }
  }
  double overall = 0.0;
  for (const auto& [n, v] : by_n) {
    const auto& [count, ratio, margin] = v;
    const bool pass = margin >= 0.0;
    ok = ok && pass;
    overall = std::max(overall, ratio);
    t.row(n, count, ratio, margin, pass);
  }
  return {"lipschitz", ok,
          fmt("10000 pairs; largest |d sigma_k| / |dx|_inf = %.6g (bound 3)", overall),
          t.str()};
}

CriterionResult hartman(std::uint64_t) {
  Table t("point,x1,x2,x3,ours,hartman,expected_ours,expected_hartman,pass");
  const FiniteSet set = make_hartman_set(0.5);
  const Point x_star = lexmax_finite(set.points()).front();
  const bool expected_ours[] = {true, true, false};
  const bool expected_hartman[] = {true, false, true};
  bool ok = lexmax_finite(set.points()).size() == 1 && x_star == set.points()[0];
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& x = set.points()[i];
    const auto v = closeness(x, x_star, set, 0.5);
    const bool pass = v.ours == expected_ours[i] && v.hartman == expected_hartman[i];
    ok = ok && pass;
    t.row("x" + std::to_string(i + 1), x[0], x[1], x[2], v.ours, v.hartman, expected_ours[i],
          expected_hartman[i], pass);
  }
  return {"hartman", ok, "ours-close = {x1,x2}, hartman-close = {x1,x3}", t.str()};
}

using Runner = std::function<CriterionResult(std::uint64_t)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> r{
      {"equivalence", equivalence},   {"sharp_lower", sharp_lower},
      {"rate_lower", rate_lower},     {"upper_bound", upper_bound},
      {"near_min_band", near_min_band}, {"curved", curved},
      {"mw_fw", mw_fw},               {"gap_decay", gap_decay},
      {"constant_eta", constant_eta}, {"polytope_stability", polytope_stability},
      {"lipschitz", lipschitz},       {"hartman", hartman},
  };
  return r;
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write " + tmp);
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, run] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

CriterionResult run_criterion(const std::string& name, std::uint64_t seed) {
  for (const auto& [n, run] : registry()) {
    if (n == name) return run(seed);
  }
  throw InvalidArgument("unknown criterion '" + name + "'");
}

std::string summary_csv(const std::vector<CriterionResult>& results) {
  std::string out = "criterion,pass,detail\n";
  for (const auto& r : results) {
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    out += r.name + "," + (r.pass ? "true" : "false") + "," + detail + "\n";
  }
  return out;
}

std::vector<CriterionResult> reproduce(const ReproduceOptions& options) {
  for (const auto& name : options.only) {
    const auto& names = criterion_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw InvalidArgument("unknown criterion '" + name + "'");
    }
  }
  std::vector<CriterionResult> results;
  for (const auto& name : criterion_names()) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), name) == options.only.end()) {
      continue;
    }
    results.push_back(run_criterion(name, options.seed));
  }
  if (options.out_dir) {
    const std::filesystem::path dir(*options.out_dir);
    std::filesystem::create_directories(dir);
    for (const auto& r : results) write_atomically(dir / (r.name + ".csv"), r.csv);
    write_atomically(dir / "summary.csv", summary_csv(results));
  }
  return results;
}

}  // namespace lexopt
