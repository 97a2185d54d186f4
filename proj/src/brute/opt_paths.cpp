#include <algorithm>
#include <stdexcept>
#include <string>

#include "tokensched/brute.hpp"
#include "tokensched/errors.hpp"
#include "tokensched/replay.hpp"

namespace tokensched::brute {

DirectedPathSet extract_opt_paths(const Graph& g, const NetworkParams& p,
                                  const Schedule& s, std::vector<int> W) {
  std::sort(W.begin(), W.end());
  W.erase(std::unique(W.begin(), W.end()), W.end());
  if (W.size() % 2 == 1) W.pop_back();

  ReplayOptions opts;
  opts.record_events = true;
  const auto res = replay(g, p, s, initial_state(g.n()), opts);
  if (res.violation || res.final_state.token_count() != 1) {
    throw ScheduleError("extract_opt_paths needs a valid schedule");
  }

  std::vector<char> in_w(g.n(), 0);
  std::vector<char> pending(g.n(), 0);
  std::vector<std::vector<int>> trace(g.n());
  std::vector<int> partner(g.n(), -1);
  for (int w : W) {
    in_w[w] = 1;
    pending[w] = 1;
    trace[w].push_back(w);
  }

  // Returns the pending singleton of an active token, -1 for an inactive one.
  auto pending_of = [&](const Token& t) {
    int in_set = 0;
    int found = -1;
    int count = 0;
    for (int a : t) {
      if (!in_w[a]) continue;
      ++in_set;
      if (pending[a]) {
        found = a;
        ++count;
      }
    }
    const bool active = in_set % 2 == 1;
    if (count != (active ? 1 : 0)) {
      throw std::logic_error("token holds " + std::to_string(count) +
                             " pending singletons while " +
                             (active ? "active" : "inactive"));
    }
    return found;
  };

  for (const auto& ev : res.events) {
    if (ev.kind == ReplayEvent::Kind::Delivery) {
      for (int a : ev.token) {
        if (in_w[a] && pending[a]) trace[a].push_back(ev.node);
      }
      continue;
    }
    const int x = pending_of(ev.left);
    const int y = pending_of(ev.right);
    if (x >= 0 && y >= 0) {
      partner[x] = y;
      partner[y] = x;
      pending[x] = 0;
      pending[y] = 0;
    }
  }

  DirectedPathSet out;
  for (int w : W) {
    const int u = partner[w];
    if (u < 0) throw std::logic_error("singleton " + std::to_string(w) + " never paired");
    VertexPath path = trace[w];
    path.insert(path.end(), trace[u].rbegin() + 1, trace[u].rend());
    out.paths.push_back(std::move(path));
  }

  const int con = congestion(out.paths, g.n());
  if (static_cast<long long>(con) * p.min_cost() > 2LL * s.length) {
    throw std::logic_error("OptPaths congestion " + std::to_string(con) +
                           " exceeds 2 * " + std::to_string(s.length) + " / " +
                           std::to_string(p.min_cost()));
  }
  return out;
}

}  // namespace tokensched::brute
