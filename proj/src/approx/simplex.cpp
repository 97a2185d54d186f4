#include "tokensched/simplex.hpp"

#include <cmath>
#include <limits>

#include "tokensched/errors.hpp"

namespace tokensched::lp {

int Problem::add_variable(double cost) {
  objective.push_back(cost);
  return num_vars++;
}

namespace {

constexpr int kDegenerateRunBeforeBland = 64;

class Tableau {
 public:
  Tableau(const Problem& pr, const Options& opt) : opt_(opt), m_(static_cast<int>(pr.rows.size())) {
    const int n = pr.num_vars;
    int slacks = 0;
    for (const auto& row : pr.rows) slacks += row.sense != Sense::Eq;
    num_structural_ = n;
    first_artificial_ = n + slacks;
    // Artificial columns are allocated for every row so that each row owns
    // an identity column; unused ones stay zero.
    cols_ = first_artificial_ + m_;
    a_.assign(m_, std::vector<double>(cols_ + 1, 0.0));
    basis_.assign(m_, -1);
    identity_col_.assign(m_, -1);
    flip_.assign(m_, 1.0);
    int slack = n;
    for (int i = 0; i < m_; ++i) {
      const auto& row = pr.rows[i];
      for (auto [j, c] : row.terms) {
        if (j < 0 || j >= n) throw InputError("lp: variable index out of range");
        a_[i][j] += c;
      }
      a_[i][cols_] = row.rhs;
      int slack_col = -1;
      if (row.sense == Sense::Le) {
        slack_col = slack++;
        a_[i][slack_col] = 1.0;
      } else if (row.sense == Sense::Ge) {
        slack_col = slack++;
        a_[i][slack_col] = -1.0;
      }
      if (a_[i][cols_] < 0) {
        flip_[i] = -1.0;
        for (double& v : a_[i]) v = -v;
      }
      if (slack_col >= 0 && a_[i][slack_col] > 0) {
        basis_[i] = slack_col;
      } else {
        basis_[i] = first_artificial_ + i;
        a_[i][first_artificial_ + i] = 1.0;
      }
      identity_col_[i] = basis_[i];
    }
    cost_.assign(cols_, 0.0);
    for (int j = 0; j < n; ++j) cost_[j] = pr.objective[j];
  }

  Solution run() {
    Solution sol;
    bool need_phase1 = false;
    for (int i = 0; i < m_; ++i) need_phase1 |= is_artificial(basis_[i]);
    if (need_phase1) {
      std::vector<double> phase1(cols_, 0.0);
      for (int j = first_artificial_; j < cols_; ++j) phase1[j] = 1.0;
      Status st = optimize(phase1, true);
      if (st == Status::IterationLimit) {
        sol.status = st;
        return sol;
      }
      double infeas = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (is_artificial(basis_[i])) infeas += a_[i][cols_];
      }
      if (infeas > 1e-7) {
        sol.status = Status::Infeasible;
        return sol;
      }
      drive_out_artificials();
    }
    sol.status = optimize(cost_, false);
    if (sol.status != Status::Optimal) return sol;

    sol.x.assign(num_structural_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < num_structural_) sol.x[basis_[i]] = a_[i][cols_];
    }
    sol.objective = 0.0;
    for (int j = 0; j < num_structural_; ++j) sol.objective += cost_[j] * sol.x[j];
    // duals' = c_B B^{-1}; B^{-1} column i sits where the initial identity
    // column of row i was.
    sol.duals.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      double y = 0.0;
      for (int k = 0; k < m_; ++k) y += cost_[basis_[k]] * a_[k][identity_col_[i]];
      sol.duals[i] = y * flip_[i];
    }
    return sol;
  }

 private:
  bool is_artificial(int j) const { return j >= first_artificial_; }

  void pivot(int r, int c) {
    auto& pr = a_[r];
    const double inv = 1.0 / pr[c];
    for (double& v : pr) v *= inv;
    pr[c] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = a_[i][c];
      if (f == 0.0) continue;
      auto& row = a_[i];
      for (int j = 0; j <= cols_; ++j) row[j] -= f * pr[j];
      row[c] = 0.0;
    }
    basis_[r] = c;
  }

  Status optimize(const std::vector<double>& cost, bool phase1) {
    int degenerate_run = 0;
    std::vector<double> reduced(cols_);
    for (int iter = 0; iter < opt_.max_iterations; ++iter) {
      for (int j = 0; j < cols_; ++j) reduced[j] = cost[j];
      for (int i = 0; i < m_; ++i) {
        const double cb = cost[basis_[i]];
        if (cb == 0.0) continue;
        for (int j = 0; j < cols_; ++j) reduced[j] -= cb * a_[i][j];
      }
      const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
      int enter = -1;
      double best = -opt_.tolerance;
      for (int j = 0; j < cols_; ++j) {
        if (!phase1 && is_artificial(j)) continue;
        if (reduced[j] < best) {
          enter = j;
          if (bland) break;
          best = reduced[j];
        }
      }
      if (enter < 0) return Status::Optimal;

      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const double coef = a_[i][enter];
        if (coef <= opt_.tolerance) continue;
        const double q = a_[i][cols_] / coef;
        if (q < ratio - 1e-12 ||
            (std::abs(q - ratio) <= 1e-12 && leave >= 0 && basis_[i] < basis_[leave])) {
          ratio = q;
          leave = i;
        }
      }
      if (leave < 0) return Status::Unbounded;
      degenerate_run = ratio <= 1e-12 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
    return Status::IterationLimit;
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      int best = -1;
      for (int j = 0; j < first_artificial_; ++j) {
        if (std::abs(a_[i][j]) > 1e-7 && (best < 0 || std::abs(a_[i][j]) > std::abs(a_[i][best]))) {
          best = j;
        }
      }
      // A row with no structural entry is redundant; its artificial stays
      // basic at zero and no later pivot can move it.
      if (best >= 0) pivot(i, best);
    }
  }

  Options opt_;
  int m_;
  int num_structural_ = 0;
  int first_artificial_ = 0;
  int cols_ = 0;
  std::vector<std::vector<double>> a_;  // m rows, last column is the rhs
  std::vector<int> basis_;
  std::vector<int> identity_col_;
  std::vector<double> flip_;
  std::vector<double> cost_;
};

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  if (static_cast<int>(problem.objective.size()) != problem.num_vars) {
    throw InputError("lp: objective size does not match variable count");
  }
  if (problem.rows.empty()) {
    Solution sol;
    sol.x.assign(problem.num_vars, 0.0);
    for (double c : problem.objective) {
      if (c < -options.tolerance) {
        sol.status = Status::Unbounded;
        return sol;
      }
    }
    sol.status = Status::Optimal;
    return sol;
  }
  return Tableau(problem, options).run();
}

}  // namespace tokensched::lp
