// lexopt command-line front end.
//
// Every option can come from a JSON config (--config) and be overridden by a
// flag. LEXOPT_SEED overrides the config seed; an explicit --seed wins over both.
// Exit status: 0 ok, 1 a checked bound or criterion failed, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lexopt/csv.hpp"
#include "lexopt/expmin.hpp"
#include "lexopt/filling.hpp"
#include "lexopt/lab.hpp"
#include "lexopt/reproduce.hpp"

namespace {

using json = nlohmann::json;
using namespace lexopt;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw flag values; anything left unset falls back to the config file.
struct Flags {
  std::string config;
  std::string set;
  std::optional<double> eps, c, gamma, param, a;
  std::optional<std::size_t> rounds, resolution, refine_iters, k;
  std::optional<std::uint64_t> seed;
  std::string selector, schedule, fw_start, bound, target, x_star, out;
  std::vector<double> eps_list, c_list;
  std::vector<std::string> only;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  return j;
}

json parse_json_arg(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    throw UsageError(std::string("--") + what + " is not valid JSON: " + text);
  }
}

// Folds flags over the config; flags win.
json merge(json cfg, const Flags& f) {
  if (const char* env = std::getenv("LEXOPT_SEED")) {
    try {
      cfg["seed"] = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("LEXOPT_SEED is not an integer: ") + env);
    }
  }
  if (!f.set.empty()) {
    // bare catalog names are accepted without JSON quoting
    json s;
    try {
      s = json::parse(f.set);
    } catch (const json::exception&) {
      s = f.set;
    }
    cfg["set"] = s;
  }
  auto put = [&](const char* key, const auto& v) {
    if (v) cfg[key] = *v;
  };
  put("eps", f.eps);
  put("c", f.c);
  put("gamma", f.gamma);
  put("param", f.param);
  put("a", f.a);
  put("T", f.rounds);
  put("resolution", f.resolution);
  put("refine_iters", f.refine_iters);
  put("k", f.k);
  put("seed", f.seed);
  auto put_str = [&](const char* key, const std::string& v) {
    if (!v.empty()) cfg[key] = v;
  };
  put_str("selector", f.selector);
  put_str("schedule", f.schedule);
  put_str("fw_start", f.fw_start);
  put_str("bound", f.bound);
  put_str("out", f.out);
  if (!f.target.empty()) cfg["target"] = parse_json_arg(f.target, "target");
  if (!f.x_star.empty()) cfg["x_star"] = parse_json_arg(f.x_star, "x-star");
  if (!f.eps_list.empty()) cfg["eps_list"] = f.eps_list;
  if (!f.c_list.empty()) cfg["c_list"] = f.c_list;
  if (!f.only.empty()) cfg["only"] = f.only;
  return cfg;
}

template <class T>
T get(const json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config field '") + key + "' has the wrong type");
  }
}

template <class T>
T require(const json& cfg, const char* key) {
  if (!cfg.contains(key)) throw UsageError(std::string("missing '") + key + "'");
  return get<T>(cfg, key, T{});
}

Point to_point(const json& v) {
  if (!v.is_array() || v.empty()) throw UsageError("a point must be a nonempty number list");
  std::vector<double> x;
  for (const auto& e : v) {
    if (!e.is_number()) throw UsageError("point coordinates must be numbers");
    x.push_back(e.get<double>());
  }
  return Point(std::move(x));
}

std::vector<Point> to_points(const json& v) {
  if (!v.is_array() || v.empty()) throw UsageError("expected a nonempty list of points");
  std::vector<Point> pts;
  for (const auto& e : v) pts.push_back(to_point(e));
  return pts;
}

std::uint64_t seed_of(const json& cfg) { return get<std::uint64_t>(cfg, "seed", kDefaultSeed); }

GroundSet catalog_set(const std::string& name, const json& s, std::uint64_t seed) {
  if (name == "curved3") return CurvedSet3{};
  if (name == "intro") return intro_set();
  if (name == "sharp_lower") return make_sharp_lower_set(get<std::size_t>(s, "n", 8));
  if (name == "rate_segment") {
    return make_rate_segment(get<std::size_t>(s, "n", 5), get<std::size_t>(s, "k", 4),
                             get<double>(s, "a", 2.0));
  }
  if (name == "hartman") return make_hartman_set(get<double>(s, "eps", 0.5));
  if (name == "random_polytope") {
    std::mt19937_64 rng(seed);
    return random_polytope(rng, get<std::size_t>(s, "m", 3), get<std::size_t>(s, "cols", 4));
  }
  if (name == "random_finite") {
    std::mt19937_64 rng(seed);
    return random_finite_set(rng, get<std::size_t>(s, "n", 3), get<std::size_t>(s, "count", 20));
  }
  throw UsageError("unknown catalog set '" + name + "'");
}

GroundSet parse_set(const json& cfg) {
  if (!cfg.contains("set")) throw UsageError("no set given (use --set or a config 'set')");
  const json& s = cfg.at("set");
  const auto seed = seed_of(cfg);
  if (s.is_string()) return catalog_set(s.get<std::string>(), json::object(), seed);
  if (!s.is_object() || s.size() == 0) throw UsageError("set must be a name or an object");
  std::size_t forms = s.contains("finite") + s.contains("polytope") + s.contains("path") +
                      s.contains("catalog");
  if (forms != 1) throw UsageError("set needs exactly one of finite, polytope, path, catalog");
  if (s.contains("finite")) return FiniteSet(to_points(s.at("finite")));
  if (s.contains("polytope")) return VPolytope(to_points(s.at("polytope")));
  if (s.contains("path")) return PolyPath(to_points(s.at("path")));
  return catalog_set(get<std::string>(s, "catalog", ""), s, seed);
}

SolveBudget budget_of(const json& cfg) {
  SolveBudget b;
  b.resolution = get<std::size_t>(cfg, "resolution", b.resolution);
  b.refine_iters = get<std::size_t>(cfg, "refine_iters", b.refine_iters);
  if (b.resolution == 0) throw UsageError("resolution must be positive");
  return b;
}

// Writes to cfg["out"] if present, else stdout.
void emit(const json& cfg, const std::string& text) {
  const auto path = get<std::string>(cfg, "out", "");
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

int cmd_lexmax(const json& cfg) {
  const GroundSet set = parse_set(cfg);
  std::vector<Point> maxima;
  double slack = 0.0;
  if (const auto* finite = std::get_if<FiniteSet>(&set)) {
    maxima = lexmax_finite(finite->points());
  } else {
    const auto trace = run_fill(set, 0.0, budget_of(cfg));
    maxima.push_back(trace.iterates.back());
    slack = trace.slack;
  }
  std::ostringstream out;
  for (const auto& x : maxima) {
    out << to_string(x) << " sorted " << to_string(Point(sorted_values(x.coords()))) << '\n';
  }
  if (slack > 0) out << "grid slack " << format_double(slack) << '\n';
  emit(cfg, out.str());
  return kOk;
}

Selector selector_of(const std::string& s) {
  if (s == "best") return Selector::best;
  if (s == "adversarial") return Selector::adversarial;
  if (s == "target") return Selector::target;
  throw UsageError("selector must be best, adversarial or target");
}

int cmd_fill(const json& cfg) {
  const GroundSet set = parse_set(cfg);
  const double eps = get<double>(cfg, "eps", 0.0);
  if (!(eps >= 0)) throw UsageError("eps must be nonnegative");
  const Selector sel = selector_of(get<std::string>(cfg, "selector", "best"));
  std::optional<Point> target;
  if (cfg.contains("target")) target = to_point(cfg.at("target"));
  if (sel == Selector::target && !target) throw UsageError("selector target needs --target");
  const SolveBudget budget = budget_of(cfg);
  const auto trace = run_fill(set, eps, budget, sel, target);
  std::ostringstream out;
  write_fill_trace(out, trace);
  emit(cfg, out.str());
  const Point& x = trace.iterates.back();
  // grid estimates of H_k never exceed the true sup, so this check is at eps itself
  const bool ok = is_possible_output(set, x, eps, budget);
  std::cerr << "final " << to_string(x) << " possible output at eps " << format_double(eps)
            << ": " << (ok ? "yes" : "no") << " (grid slack " << format_double(trace.slack)
            << ")\n";
  return kOk;
}

Schedule schedule_of(const std::string& s) {
  if (s == "fw") return Schedule::frank_wolfe;
  if (s == "c/t") return Schedule::c_over_t;
  if (s == "constant") return Schedule::constant;
  throw UsageError("schedule must be fw, c/t or constant");
}

int cmd_solve(const json& cfg) {
  const GroundSet set = parse_set(cfg);
  // a path is solved over the hull of its vertices
  const VPolytope poly = std::holds_alternative<VPolytope>(set)
                             ? std::get<VPolytope>(set)
                             : VPolytope(generators(set));
  const Schedule schedule = schedule_of(get<std::string>(cfg, "schedule", "fw"));
  const auto T = get<std::size_t>(cfg, "T", 100);
  if (T == 0) throw UsageError("T must be positive");
  const double param = get<double>(cfg, "param", get<double>(cfg, "c", 1.0));
  SolverRun run;
  if (schedule == Schedule::frank_wolfe) {
    const auto start = get<std::string>(cfg, "fw_start", "uniform_p");
    if (start != "uniform_p" && start != "uniform_weights") {
      throw UsageError("fw_start must be uniform_p or uniform_weights");
    }
    run = frank_wolfe(poly, param, T,
                      start == "uniform_p" ? FwStart::uniform_p : FwStart::uniform_weights);
  } else {
    run = multiplicative_weights(poly, schedule, param, T);
  }
  std::optional<Point> reference;
  if (cfg.contains("x_star")) reference = to_point(cfg.at("x_star"));
  std::ostringstream out;
  write_solver_run(out, run, poly, reference);
  emit(cfg, out.str());
  const Point x = polytope_point(poly, run.q_average());
  std::cerr << "final " << to_string(x);
  if (reference) std::cerr << " distortion " << format_double(distortion(*reference, x));
  std::cerr << '\n';
  return kOk;
}

std::optional<Point> x_star_of(const json& cfg) {
  if (!cfg.contains("x_star")) return std::nullopt;
  return to_point(cfg.at("x_star"));
}

std::string set_name(const json& cfg) {
  const json& s = cfg.at("set");
  if (s.is_string()) return s.get<std::string>();
  if (s.contains("catalog")) return get<std::string>(s, "catalog", "set");
  return s.begin().key();
}

int report_records(const json& cfg, const std::vector<ExperimentRecord>& recs) {
  std::ostringstream out;
  write_records(out, recs);
  emit(cfg, out.str());
  for (const auto& r : recs) {
    if (!r.pass) return kFailed;
  }
  return kOk;
}

int cmd_stability(const json& cfg) {
  const GroundSet set = parse_set(cfg);
  StabilityOptions o;
  o.name = set_name(cfg);
  o.x_star = x_star_of(cfg);
  o.k = get<std::size_t>(cfg, "k", 0);
  if (cfg.contains("witnesses")) o.witnesses = to_points(cfg.at("witnesses"));
  if (cfg.contains("at_least")) o.at_least = get<double>(cfg, "at_least", 0.0);
  const auto eps_list = get<std::vector<double>>(cfg, "eps_list", {0.1, 0.05, 0.01});
  return report_records(cfg, stability_curve(set, eps_list, budget_of(cfg), o));
}

int cmd_converge(const json& cfg) {
  const GroundSet set = parse_set(cfg);
  ConvergenceOptions o;
  o.name = set_name(cfg);
  o.x_star = x_star_of(cfg);
  o.k = get<std::size_t>(cfg, "k", 0);
  const auto bound = get<std::string>(cfg, "bound", "upper");
  if (bound == "upper") {
    o.bound = BoundKind::upper_log_ratio;
  } else if (bound == "rate_lower") {
    o.bound = BoundKind::rate_lower;
    o.a = require<double>(cfg, "a");
  } else if (bound == "sharp_lower") {
    o.bound = BoundKind::sharp_lower;
  } else {
    throw UsageError("bound must be upper, rate_lower or sharp_lower");
  }
  const auto c_list = get<std::vector<double>>(cfg, "c_list", {1, 2, 4, 8, 16});
  const double gamma = get<double>(cfg, "gamma", 0.0);
  return report_records(cfg, convergence_curve(set, c_list, gamma, budget_of(cfg), o));
}

int cmd_reproduce(const json& cfg) {
  ReproduceOptions o;
  o.seed = seed_of(cfg);
  o.only = get<std::vector<std::string>>(cfg, "only", {});
  const auto known = criterion_names();
  for (const auto& name : o.only) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw UsageError("unknown criterion '" + name + "'");
    }
  }
  o.out_dir = get<std::string>(cfg, "out", "reproduce_out");
  const auto results = reproduce(o);
  int status = kOk;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
    if (!r.pass) status = kFailed;
  }
  if (status != kOk) {
    std::cerr << "failed:";
    for (const auto& r : results) {
      if (!r.pass) std::cerr << ' ' << r.name;
    }
    std::cerr << '\n';
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicographic maximization: progressive filling and exponential-loss minimization"};
  app.require_subcommand(1);
  Flags f;

  using Cmd = int (*)(const json&);
  const std::vector<std::tuple<const char*, const char*, Cmd>> commands{
      {"lexmax", "Print the lexicographic maximum and its sorted view", cmd_lexmax},
      {"fill", "Run progressive filling and print the per-round trace CSV", cmd_fill},
      {"solve", "Run Frank-Wolfe or multiplicative weights and print the run CSV", cmd_solve},
      {"stability", "Distortion of eps-admissible points per eps (records CSV)", cmd_stability},
      {"converge", "Distortion of loss minimizers per c against a bound (records CSV)",
       cmd_converge},
      {"reproduce", "Run the acceptance criteria and write one CSV each", cmd_reproduce},
  };
  std::map<CLI::App*, Cmd> dispatch;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    dispatch[sub] = fn;
    sub->add_option("--config", f.config, "JSON config file");
    sub->add_option("--seed", f.seed, "RNG seed");
    sub->add_option("-o,--out", f.out, "Output file (directory for reproduce)");
    const std::string cmd = name;
    if (cmd == "reproduce") {
      sub->add_option("--only", f.only, "Run only these criteria");
      continue;
    }
    sub->add_option("--set", f.set, "Set: JSON literal or catalog name");
    sub->add_option("--resolution", f.resolution, "Grid resolution");
    sub->add_option("--refine-iters", f.refine_iters, "Local refinement iterations");
    if (cmd == "fill") {
      sub->add_option("--eps", f.eps, "Tolerance");
      sub->add_option("--selector", f.selector, "best, adversarial or target");
      sub->add_option("--target", f.target, "Target point as a JSON list");
    }
    if (cmd == "solve") {
      sub->add_option("--schedule", f.schedule, "fw, c/t or constant");
      sub->add_option("-c", f.c, "Loss scale c");
      sub->add_option("--param", f.param, "c for fw and c/t, eta for constant");
      sub->add_option("-T,--rounds", f.rounds, "Number of rounds");
      sub->add_option("--fw-start", f.fw_start, "uniform_p (default) or uniform_weights");
    }
    if (cmd == "stability" || cmd == "converge" || cmd == "solve") {
      sub->add_option("--x-star", f.x_star, "Reference maximum as a JSON list");
    }
    if (cmd == "stability" || cmd == "converge") sub->add_option("-k", f.k, "Distortion index");
    if (cmd == "stability") sub->add_option("--eps-list", f.eps_list, "Tolerances");
    if (cmd == "converge") {
      sub->add_option("--c-list", f.c_list, "Loss scales");
      sub->add_option("--gamma", f.gamma, "Near-minimizer slack in [0,1)");
      sub->add_option("--bound", f.bound, "upper, rate_lower or sharp_lower");
      sub->add_option("-a", f.a, "Rate-segment parameter");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const json cfg = merge(load_config(f.config), f);
    for (auto& [sub, fn] : dispatch) {
      if (sub->parsed()) return fn(cfg);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const lexopt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
