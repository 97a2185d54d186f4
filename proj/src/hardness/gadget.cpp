#include <algorithm>
#include <map>

#include "tokensched/errors.hpp"
#include "tokensched/hardness.hpp"

namespace tokensched::hardness {

PsiGadget psi_transform(const Graph& g, int tm) {
  if (tm < 1) throw InputError("psi_transform needs tm >= 1");
  PsiGadget out;
  out.base = g;
  out.tm = tm;
  out.delta = g.max_degree();
  const int n = g.n();
  out.a = n;
  out.d_star = n + 1;
  const int danglers = out.delta + tm;
  Graph h(n + 2 + danglers);
  for (auto [u, v] : g.edges()) h.add_edge(u, v);
  for (int v = 0; v < h.n(); ++v) {
    if (v != out.a) h.add_edge(out.a, v);
  }
  for (int i = 0; i < danglers; ++i) out.beta.push_back(n + 2 + i);
  out.graph = std::move(h);
  return out;
}

bool is_dominating(const Graph& g, const std::vector<int>& kappa) {
  std::vector<char> covered(g.n(), 0);
  for (int k : kappa) {
    if (k < 0 || k >= g.n()) return false;
    covered[k] = 1;
    for (int u : g.neighbors(k)) covered[u] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

std::string dominating_set_problem(const Graph& g, const DominatingSet& ds) {
  if (!std::is_sorted(ds.kappa.begin(), ds.kappa.end()) ||
      std::adjacent_find(ds.kappa.begin(), ds.kappa.end()) != ds.kappa.end()) {
    return "kappa must be sorted without repeats";
  }
  if (!is_dominating(g, ds.kappa)) return "kappa does not dominate the graph";
  if (static_cast<int>(ds.sigma.size()) != g.n()) return "sigma needs one entry per vertex";
  for (int v = 0; v < g.n(); ++v) {
    const int s = ds.sigma[v];
    if (!std::binary_search(ds.kappa.begin(), ds.kappa.end(), s)) {
      return "sigma(" + std::to_string(v) + ") is not in kappa";
    }
    if (s != v && !g.has_edge(v, s)) return "sigma(" + std::to_string(v) + ") is not adjacent";
  }
  for (int k : ds.kappa) {
    if (ds.sigma[k] != k) return "a kappa vertex must map to itself";
  }
  return {};
}

DominatingSet make_dominating_set(const Graph& g, std::vector<int> kappa) {
  std::sort(kappa.begin(), kappa.end());
  kappa.erase(std::unique(kappa.begin(), kappa.end()), kappa.end());
  if (!is_dominating(g, kappa)) throw InputError("vertex set does not dominate the graph");
  DominatingSet ds;
  ds.sigma.assign(g.n(), -1);
  for (int k : kappa) ds.sigma[k] = k;
  for (int v = 0; v < g.n(); ++v) {
    if (ds.sigma[v] >= 0) continue;
    for (int u : g.neighbors(v)) {
      if (std::binary_search(kappa.begin(), kappa.end(), u)) {
        ds.sigma[v] = u;
        break;
      }
    }
  }
  ds.kappa = std::move(kappa);
  return ds;
}

Schedule schedule_from_dominating_set(const PsiGadget& gadget, const DominatingSet& ds) {
  const Graph& g = gadget.base;
  if (auto problem = dominating_set_problem(g, ds); !problem.empty()) {
    throw InputError("invalid dominating set: " + problem);
  }
  const int tm = gadget.tm;
  const int tc = 1;
  Schedule s;
  // Stage 1.
  for (int d : gadget.beta) s.actions.push_back(make_send(1, d, gadget.a));
  for (int v = 0; v < g.n(); ++v) {
    if (ds.sigma[v] != v) s.actions.push_back(make_send(1, v, ds.sigma[v]));
  }
  s.actions.push_back(make_send(1, gadget.a, gadget.d_star));

  // Stage 2: arrivals at the hub, keyed by the round they become usable.
  std::map<int, int> arrivals;
  s.actions.push_back(make_compute(tm + 1, gadget.d_star));
  s.actions.push_back(make_send(tm + 1 + tc, gadget.d_star, gadget.a));
  ++arrivals[tm + 1 + tc + tm];
  std::map<int, int> pile;
  for (int v = 0; v < g.n(); ++v) ++pile[ds.sigma[v]];
  for (int k : ds.kappa) {
    const int merges = pile[k] - 1;
    for (int j = 0; j < merges; ++j) s.actions.push_back(make_compute(tm + 1 + j * tc, k));
    const int send_round = tm + 1 + merges * tc;
    s.actions.push_back(make_send(send_round, k, gadget.a));
    ++arrivals[send_round + tm];
  }

  // Stages 2 and 3 at the hub: merge whenever two tokens are on hand.
  int held = static_cast<int>(gadget.beta.size());
  int pending = 0;
  for (const auto& [round, count] : arrivals) pending += count;
  int round = tm + 1;
  while (held + pending > 1) {
    if (auto it = arrivals.find(round); it != arrivals.end()) {
      held += it->second;
      pending -= it->second;
    }
    if (held >= 2) {
      s.actions.push_back(make_compute(round, gadget.a));
      --held;
      round += tc;
      continue;
    }
    ++round;
  }
  s.length = last_occupied_round(s, {tc, tm});
  s.sort_actions();
  return s;
}

Graph disjoint_copies(const Graph& g, int copies) {
  if (copies < 1) throw InputError("disjoint_copies needs at least one copy");
  const int n = g.n();
  Graph out(n * copies);
  for (int i = 0; i < copies; ++i) {
    for (auto [u, v] : g.edges()) out.add_edge(i * n + u, i * n + v);
  }
  return out;
}

}  // namespace tokensched::hardness
