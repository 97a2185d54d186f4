#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tokensched/graph.hpp"
#include "tokensched/params.hpp"
#include "tokensched/schedule.hpp"

namespace tokensched::hardness {

// Base graph G on ids 0..n-1, hub a = n, special dangler d* = n+1 and the
// danglers beta = n+2 .. n+1+Delta+tm. The hub is adjacent to every other
// node; danglers touch only the hub.
struct PsiGadget {
  Graph base;
  int tm = 1;
  int delta = 0;
  Graph graph;
  int a = -1;
  int d_star = -1;
  std::vector<int> beta;
};

PsiGadget psi_transform(const Graph& g, int tm);

struct DominatingSet {
  std::vector<int> kappa;  // sorted
  std::vector<int> sigma;  // sigma[v]: a member of kappa equal or adjacent to v
  int size() const { return static_cast<int>(kappa.size()); }
};

bool is_dominating(const Graph& g, const std::vector<int>& kappa);
// Empty string when ds is well formed for g.
std::string dominating_set_problem(const Graph& g, const DominatingSet& ds);
// sigma maps each vertex outside kappa to its lowest-id neighbor in kappa.
// Throws InputError when kappa does not dominate g.
DominatingSet make_dominating_set(const Graph& g, std::vector<int> kappa);

// tc = 1. Stage 1: danglers send to a, every v sends to sigma(v), a sends to
// d*. Stage 2: d* merges and returns; each kappa node merges its pile and
// sends to a. The hub merges whenever it is idle with two or more tokens.
// Throws InputError for an invalid dominating set.
Schedule schedule_from_dominating_set(const PsiGadget& gadget, const DominatingSet& ds);

// Disjoint copies of g; copy i uses ids i*n .. i*n+n-1.
Graph disjoint_copies(const Graph& g, int copies);

// max(1, ceil(Delta / eps)).
int copies_for(const Graph& g, double eps);

struct AlphaGadget {
  Graph base;
  int copies = 1;
  PsiGadget psi;  // over the disjoint copies
};

AlphaGadget alpha_gadget(const Graph& g, int copies, int tm);

// For each copy, the nodes that send to a; returns the smallest such set
// (lowest copy on ties) in base ids. Throws ScheduleError for a schedule
// that is invalid on the gadget with tc = 1, InputError when its length is
// at least 3 tm, and ScheduleError if the recovered set fails to dominate.
DominatingSet ds_from_schedule(const AlphaGadget& gadget, const Schedule& s);

using Scheduler = std::function<Schedule(const Graph&, const NetworkParams&)>;

struct MdsGuess {
  int k_hat = 0;
  int tm = 0;
  int gadget_nodes = 0;
  int schedule_length = 0;
  bool recovered = false;
  int recovered_size = 0;
};

struct MdsResult {
  DominatingSet ds;
  std::vector<MdsGuess> guesses;
  std::string warning;
};

// tm for guess k_hat: ceil((Delta + k_hat * copies) / eps) + 1.
int mds_tm(const Graph& g, int k_hat, double eps);

// Tries k_hat = 1..n on alpha gadgets and keeps the smallest recovered set
// (lexicographically smallest on ties). Falls back to all of V with a
// warning when no schedule is shorter than 3 tm.
MdsResult mds_apx(const Graph& g, const Scheduler& scheduler, double eps);

}  // namespace tokensched::hardness
