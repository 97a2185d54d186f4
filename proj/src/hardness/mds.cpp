#include <algorithm>
#include <cmath>
#include <limits>

#include "tokensched/errors.hpp"
#include "tokensched/hardness.hpp"
#include "tokensched/replay.hpp"

namespace tokensched::hardness {

int copies_for(const Graph& g, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InputError("eps must lie in (0, 1]");
  const double c = std::ceil(g.max_degree() / eps - 1e-9);
  return std::max(1, static_cast<int>(c));
}

AlphaGadget alpha_gadget(const Graph& g, int copies, int tm) {
  AlphaGadget out;
  out.base = g;
  out.copies = copies;
  out.psi = psi_transform(disjoint_copies(g, copies), tm);
  return out;
}

DominatingSet ds_from_schedule(const AlphaGadget& gadget, const Schedule& s) {
  const PsiGadget& psi = gadget.psi;
  const NetworkParams p{1, psi.tm};
  if (s.length >= 3 * psi.tm) {
    throw InputError("ds_from_schedule needs a schedule shorter than 3 tm");
  }
  auto report = validate_schedule(psi.graph, p, s);
  if (!report.valid) {
    throw ScheduleError("ds_from_schedule: schedule is invalid on the gadget: " +
                        (report.violation ? report.violation->message : std::string("tokens left")));
  }
  const int n = gadget.base.n();
  std::vector<std::vector<int>> kappa(gadget.copies);
  std::vector<char> seen(psi.base.n(), 0);
  for (const auto& act : s.actions) {
    if (act.kind != ActionKind::Send || act.target != psi.a || act.node >= psi.base.n()) continue;
    if (seen[act.node]) continue;
    seen[act.node] = 1;
    kappa[act.node / n].push_back(act.node % n);
  }
  int best = 0;
  for (int i = 1; i < gadget.copies; ++i) {
    if (kappa[i].size() < kappa[best].size()) best = i;
  }
  std::sort(kappa[best].begin(), kappa[best].end());
  if (!is_dominating(gadget.base, kappa[best])) {
    throw ScheduleError("ds_from_schedule: recovered set does not dominate the base graph");
  }
  return make_dominating_set(gadget.base, kappa[best]);
}

int mds_tm(const Graph& g, int k_hat, double eps) {
  const int copies = copies_for(g, eps);
  const double t = (g.max_degree() + static_cast<double>(k_hat) * copies) / eps;
  return static_cast<int>(std::ceil(t - 1e-9)) + 1;
}

MdsResult mds_apx(const Graph& g, const Scheduler& scheduler, double eps) {
  const int copies = copies_for(g, eps);
  MdsResult out;
  bool have = false;
  for (int k_hat = 1; k_hat <= g.n(); ++k_hat) {
    MdsGuess guess;
    guess.k_hat = k_hat;
    guess.tm = mds_tm(g, k_hat, eps);
    AlphaGadget gadget = alpha_gadget(g, copies, guess.tm);
    guess.gadget_nodes = gadget.psi.graph.n();
    Schedule s = scheduler(gadget.psi.graph, {1, guess.tm});
    guess.schedule_length = s.length;
    if (s.length < 3 * guess.tm) {
      DominatingSet ds = ds_from_schedule(gadget, s);
      guess.recovered = true;
      guess.recovered_size = ds.size();
      if (!have || ds.size() < out.ds.size() ||
          (ds.size() == out.ds.size() && ds.kappa < out.ds.kappa)) {
        out.ds = std::move(ds);
        have = true;
      }
    }
    out.guesses.push_back(guess);
  }
  if (!have) {
    std::vector<int> all(g.n());
    for (int v = 0; v < g.n(); ++v) all[v] = v;
    out.ds = make_dominating_set(g, all);
    out.warning = "no guess produced a schedule shorter than 3 tm; returning all vertices";
  }
  return out;
}

}  // namespace tokensched::hardness
