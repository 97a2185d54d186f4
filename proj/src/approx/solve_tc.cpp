#include <algorithm>
#include <cstdio>
#include <sstream>

#include "tokensched/approx.hpp"
#include "tokensched/bounds.hpp"
#include "tokensched/errors.hpp"
#include "tokensched/rng.hpp"

namespace tokensched::approx {

DirectedPathSet fallback_pairs(const Graph& g, const std::vector<int>& W_in) {
  std::vector<int> W = W_in;
  std::sort(W.begin(), W.end());
  std::vector<char> open(g.n(), 0);
  for (int w : W) open[w] = 1;
  DirectedPathSet out;
  for (int w : W) {
    if (!open[w]) continue;
    open[w] = 0;
    const auto dist = bfs_distances(g, w);
    int partner = -1;
    for (int u : W) {
      if (!open[u] || dist[u] < 0) continue;
      if (partner < 0 || dist[u] < dist[partner]) partner = u;
    }
    if (partner < 0) break;
    open[partner] = 0;
    out.paths.push_back(shortest_path(g, w, partner));
  }
  return out;
}

namespace {

struct Step {
  Schedule fragment;
  IterationReport report;
};

Step fallback_step(const Graph& g, const NetworkParams& p, const std::vector<int>& W) {
  Step st;
  DirectedPathSet dp = fallback_pairs(g, W);
  RouteResult r = route_without_delays(g, p, dp);
  st.fragment = std::move(r.fragment);
  for (int sink : dp.sinks()) st.fragment.actions.push_back(make_compute(r.makespan + 1, sink));
  st.fragment.length = r.makespan + p.tc;
  st.fragment.sort_actions();
  st.report.router = "fallback";
  st.report.con = congestion(dp.paths, g.n());
  st.report.dil = dilation(dp.paths);
  st.report.U = dp.size();
  return st;
}

std::vector<int> token_counts(const TokenState& state) {
  std::vector<int> c(state.held.size());
  for (std::size_t v = 0; v < c.size(); ++v) c[v] = static_cast<int>(state.held[v].size());
  return c;
}

}  // namespace

SolveResult solve_tc(const Graph& g, const NetworkParams& p, std::uint64_t seed) {
  check_params(p);
  if (!is_connected(g)) throw UnsolvableError("solve_tc needs a connected graph");
  SolveResult result;
  const int n = g.n();
  TokenState state = initial_state(n);
  const int cap = ApproxConstants::kIterationLogFactor * ceil_log2(n) + ApproxConstants::kIterationBase;
  const Rng root(seed);
  int offset = 0;
  for (int iter = 1; state.token_count() > 1; ++iter) {
    if (iter > cap) throw std::logic_error("solve_tc exceeded its iteration cap");
    const auto counts = token_counts(state);
    std::vector<int> W;
    for (int v = 0; v < n; ++v) {
      if (counts[v] > 1) throw std::logic_error("solve_tc left a node holding several tokens");
      if (counts[v] == 1) W.push_back(v);
    }
    if (W.size() % 2 == 1) W.pop_back();

    Step st;
    if (static_cast<int>(W.size()) > ApproxConstants::kFallbackMaxW) {
      const Rng it = root.child(static_cast<std::uint64_t>(iter));
      LChoice choice = choose_L(g, W, p);
      SampledPaths sampled = sample_paths(choice.flow, choice.L, W, it.child(1).seed());
      DirectedPathSet dp = assign_paths(sampled.paths, W);
      if (!dp.empty()) {
        st.fragment = p.tc > p.tm ? route_paths_m(g, p, dp, it.child(2).seed())
                                  : route_paths_c(g, p, dp, counts);
        st.report.router = p.tc > p.tm ? "m" : "c";
        st.report.L = choice.L;
        st.report.z = choice.flow.z;
        st.report.con = congestion(dp.paths, n);
        st.report.dil = dilation(dp.paths);
        st.report.U = dp.size();
      }
    }
    if (st.report.router.empty()) st = fallback_step(g, p, W);

    ReplayResult rr = replay(g, p, st.fragment, state);
    if (!rr.violation && rr.final_state.token_count() >= state.token_count() &&
        st.report.router != "fallback") {
      st = fallback_step(g, p, W);
      rr = replay(g, p, st.fragment, state);
    }
    if (rr.violation) {
      throw std::logic_error("solve_tc produced an invalid fragment: " + rr.violation->message);
    }
    state = std::move(rr.final_state);
    st.report.iter = iter;
    st.report.W = static_cast<int>(W.size());
    st.report.fragment_rounds = st.fragment.length;
    append_shifted(result.schedule, st.fragment, offset);
    offset = last_occupied_round(result.schedule, p);
    result.iterations.push_back(st.report);
  }
  result.schedule.length = offset;
  result.schedule.sort_actions();
  return result;
}

std::string report_csv(const SolveResult& result, std::uint64_t seed) {
  std::ostringstream os;
  os << "# seed=" << seed << "\n";
  os << "# samples=ceil(" << ApproxConstants::kSampleLogFactor << "*log2(n))+1"
     << " keep_con<=" << ApproxConstants::kCongestionFactor << "*z*log2(max(L,2))"
     << " walk_retries=" << ApproxConstants::kWalkRetries << "\n";
  os << "# route_attempts=" << ApproxConstants::kRouteAttempts
     << " route_target=" << ApproxConstants::kRouteSlack << "*(con+dil)*ceil(log2(n+2))"
     << " iteration_cap=" << ApproxConstants::kIterationLogFactor << "*ceil(log2(n))+"
     << ApproxConstants::kIterationBase << " fallback_max_W=" << ApproxConstants::kFallbackMaxW
     << "\n";
  os << "iter,W,L,z,con,dil,U,fragment_rounds,router\n";
  for (const auto& r : result.iterations) {
    char z[64];
    std::snprintf(z, sizeof z, "%.6f", r.z);
    os << r.iter << ',' << r.W << ',' << r.L << ',' << z << ',' << r.con << ',' << r.dil << ','
       << r.U << ',' << r.fragment_rounds << ',' << r.router << '\n';
  }
  return os.str();
}

}  // namespace tokensched::approx
