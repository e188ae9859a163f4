#include "lexopt/csv.hpp"

#include <cmath>
#include <cstdio>

namespace lexopt {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

void write_fill_trace(std::ostream& out, const FillTrace& trace) {
  out << "k,sigma_k,sup_estimate,eps\n";
  for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
    out << i + 1 << ',' << format_double(trace.inner_values[i]) << ','
        << format_double(trace.inner_sups[i]) << ',' << format_double(trace.epsilon) << '\n';
  }
}

void write_solver_run(std::ostream& out, const SolverRun& run, const VPolytope& poly,
                      const std::optional<Point>& reference) {
  out << "t,vertex,gap,dist_inf,schedule\n";
  const std::string tag = to_string(run.schedule);
  for (std::size_t t = 0; t < run.rounds(); ++t) {
    double dist = std::nan("");
    if (reference) {
      std::vector<double> y(poly.rows(), 0.0);
      for (std::size_t c = 0; c < poly.cols(); ++c) {
        for (std::size_t r = 0; r < poly.rows(); ++r) {
          y[r] += run.q_averages[t][c] * poly.at(r, c);
        }
      }
      dist = linf_distance(y, reference->coords());
    }
    out << t + 1 << ',' << run.vertices[t] << ',' << format_double(run.gap_history[t]) << ','
        << format_double(dist) << ',' << tag << '\n';
  }
}

void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "set,n,k,a,c,eps,gamma,d_total,d_k,bound,pass,slack\n";
  for (const auto& r : records) {
    out << r.set << ',' << format_double(r.n) << ',' << format_double(r.k) << ','
        << format_double(r.a) << ',' << format_double(r.c) << ',' << format_double(r.eps)
        << ',' << format_double(r.gamma) << ',' << format_double(r.d_total) << ','
        << format_double(r.d_k) << ',' << format_double(r.bound) << ','
        << (r.pass ? "true" : "false") << ',' << format_double(r.slack) << '\n';
  }
}

}  // namespace lexopt
