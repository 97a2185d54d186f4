#pragma once

#include <utility>
#include <vector>

namespace tokensched::lp {

enum class Sense { Le, Ge, Eq };

struct Constraint {
  std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
  Sense sense = Sense::Le;
  double rhs = 0.0;
};

// minimize objective . x subject to rows, x >= 0.
struct Problem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> rows;

  int add_variable(double cost);
  void add_row(Constraint row) { rows.push_back(std::move(row)); }
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::IterationLimit;
  double objective = 0.0;
  std::vector<double> x;
  // One multiplier per row with c_j - duals . A_j >= 0 at optimality.
  std::vector<double> duals;
};

struct Options {
  double tolerance = 1e-9;
  int max_iterations = 500000;
};

// Dense two-phase tableau simplex. Dantzig pricing, switching to Bland's
// rule after a run of degenerate pivots.
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace tokensched::lp
