#include <algorithm>
#include <sstream>
#include <string>

#include "doctest.h"
#include "lexopt/csv.hpp"
#include "lexopt/lab.hpp"

using namespace lexopt;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.725345, 1e17}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("fill trace csv") {
  std::ostringstream out;
  write_fill_trace(out, run_fill(intro_set(), 0.0, SolveBudget{}));
  const auto s = out.str();
  CHECK(first_line(s) == "k,sigma_k,sup_estimate,eps");
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
  CHECK(s.find("\n3,5,5,0\n") != std::string::npos);
}

TEST_CASE("solver run csv") {
  const VPolytope poly({Point{1, 0}, Point{0, 1}});
  std::ostringstream out;
  write_solver_run(out, frank_wolfe(poly, 1.0, 5), poly, Point{0.5, 0.5});
  const auto s = out.str();
  CHECK(first_line(s) == "t,vertex,gap,dist_inf,schedule");
  CHECK(std::count(s.begin(), s.end(), '\n') == 6);
  CHECK(s.find(",fw\n") != std::string::npos);

  std::ostringstream bare;
  write_solver_run(bare, multiplicative_weights(poly, Schedule::constant, 0.5, 2), poly);
  CHECK(bare.str().find(",nan,constant\n") != std::string::npos);
}

TEST_CASE("records csv") {
  ExperimentRecord r;
  r.set = "x";
  r.n = 3;
  r.k = 2;
  r.a = std::nan("");
  std::ostringstream out;
  write_records(out, {r});
  CHECK(first_line(out.str()) == "set,n,k,a,c,eps,gamma,d_total,d_k,bound,pass,slack");
  CHECK(out.str().find("\nx,3,2,nan,0,0,0,0,0,0,true,0\n") != std::string::npos);
}
