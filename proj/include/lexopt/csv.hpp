#pragma once

// CSV writers for traces, solver runs, and experiment records. Floats are
// printed with 17 significant digits; fields that do not apply print "nan".

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lexopt/expmin.hpp"
#include "lexopt/filling.hpp"
#include "lexopt/lab.hpp"

namespace lexopt {

std::string format_double(double v);

/// k,sigma_k,sup_estimate,eps
void write_fill_trace(std::ostream& out, const FillTrace& trace);

/// t,vertex,gap,dist_inf,schedule. dist_inf is the l-inf distance of M qbar_t
/// to `reference`.
void write_solver_run(std::ostream& out, const SolverRun& run, const VPolytope& poly,
                      const std::optional<Point>& reference = std::nullopt);

/// set,n,k,a,c,eps,gamma,d_total,d_k,bound,pass,slack
void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records);

}  // namespace lexopt
