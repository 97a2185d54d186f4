#include "tokensched/replay.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "tokensched/errors.hpp"

namespace tokensched {

int TokenState::token_count() const {
  int total = 0;
  for (const auto& tokens : held) total += static_cast<int>(tokens.size());
  return total;
}

TokenState initial_state(int n) {
  TokenState st;
  st.held.resize(n);
  for (int v = 0; v < n; ++v) st.held[v].push_back(Token{v});
  return st;
}

void check_well_formed(const Graph& g, const Schedule& s) {
  if (s.length < 0) throw InputError("schedule length must be nonnegative");
  for (const auto& a : s.actions) {
    const std::string where = "action at round " + std::to_string(a.round) +
                              " on node " + std::to_string(a.node);
    if (a.node < 0 || a.node >= g.n()) {
      throw InputError(where + ": unknown node");
    }
    if (a.kind == ActionKind::Compute) {
      if (a.target != -1 || a.token) {
        throw InputError(where + ": COMPUTE takes no target or token");
      }
      continue;
    }
    if (a.target < 0 || a.target >= g.n()) {
      throw InputError(where + ": unknown target " + std::to_string(a.target));
    }
    if (!g.has_edge(a.node, a.target)) {
      throw InputError(where + ": target " + std::to_string(a.target) +
                       " is not a neighbor");
    }
    if (a.token && (*a.token < 0 || *a.token >= g.n())) {
      throw InputError(where + ": unknown token id " + std::to_string(*a.token));
    }
  }
}

namespace {

struct Held {
  Token members;
  long long seq = 0;
  bool locked = false;
};

struct Pending {
  ActionKind kind = ActionKind::Send;
  int node = -1;
  int target = -1;
  long long first = 0;  // seq of the sent token or first merge input
  long long second = 0;
};

Token merge_tokens(const Token& a, const Token& b) {
  Token out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class Engine {
 public:
  Engine(const Graph& g, const NetworkParams& p, const TokenState& start,
         const ReplayOptions& opts)
      : g_(g), p_(p), opts_(opts), nodes_(g.n()), busy_until_(g.n(), 0) {
    if (static_cast<int>(start.held.size()) != g.n()) {
      throw InputError("start state does not match the graph size");
    }
    for (int v = 0; v < g.n(); ++v) {
      for (const auto& t : start.held[v]) nodes_[v].push_back({t, next_seq_++, false});
    }
  }

  ReplayResult run(const Schedule& s) {
    std::vector<Action> actions = s.actions;
    std::stable_sort(actions.begin(), actions.end(), action_less);
    const int length = s.length;
    std::size_t idx = 0;

    if (!actions.empty() && actions.front().round < 1) {
      const auto& a = actions.front();
      fail(a.round, a.node, 'd', "action starts before round 1");
      return finish();
    }
    for (int r = 1; r <= length; ++r) {
      deliver_through(r);
      if (opts_.record_trace) result_.trace.push_back(snapshot());
      for (; idx < actions.size() && actions[idx].round == r; ++idx) {
        if (!start_action(actions[idx], length)) return finish();
      }
    }
    if (idx < actions.size()) {
      const auto& a = actions[idx];
      fail(a.round, a.node, 'd',
           "action starts after the declared length " + std::to_string(length));
      return finish();
    }
    deliver_through(length + 1);
    if (opts_.record_trace) result_.trace.push_back(snapshot());
    return finish();
  }

 private:
  void fail(int round, int node, char rule, std::string message) {
    result_.violation = Violation{round, node, rule, std::move(message)};
  }

  bool start_action(const Action& a, int length) {
    const int last = a.last_round(p_);
    if (last > length) {
      fail(a.round, a.node, 'd',
           "occupies rounds " + std::to_string(a.round) + ".." +
               std::to_string(last) + " beyond length " + std::to_string(length));
      return false;
    }
    if (busy_until_[a.node] >= a.round) {
      fail(a.round, a.node, 'c',
           "node is busy until round " + std::to_string(busy_until_[a.node]));
      return false;
    }
    auto& tokens = nodes_[a.node];
    Pending pending;
    pending.kind = a.kind;
    pending.node = a.node;
    pending.target = a.target;
    if (a.kind == ActionKind::Send) {
      Held* chosen = nullptr;
      for (auto& h : tokens) {
        if (h.locked) continue;
        if (a.token) {
          if (h.members.front() == *a.token) chosen = &h;
        } else if (!chosen || h.seq < chosen->seq) {
          chosen = &h;
        }
      }
      if (!chosen) {
        fail(a.round, a.node, 'a',
             a.token ? "token " + std::to_string(*a.token) + " is not held"
                     : std::string("SEND with no token held"));
        return false;
      }
      chosen->locked = true;
      pending.first = chosen->seq;
    } else {
      std::vector<Held*> free;
      for (auto& h : tokens) {
        if (!h.locked) free.push_back(&h);
      }
      if (free.size() < 2) {
        fail(a.round, a.node, 'b',
             "COMPUTE needs two tokens, node holds " + std::to_string(free.size()));
        return false;
      }
      std::partial_sort(free.begin(), free.begin() + 2, free.end(),
                        [](const Held* x, const Held* y) { return x->seq < y->seq; });
      free[0]->locked = true;
      free[1]->locked = true;
      pending.first = free[0]->seq;
      pending.second = free[1]->seq;
    }
    busy_until_[a.node] = last;
    pending_[last + 1].push_back(pending);
    return true;
  }

  Held take(int node, long long seq) {
    auto& tokens = nodes_[node];
    auto it = std::find_if(tokens.begin(), tokens.end(),
                           [seq](const Held& h) { return h.seq == seq; });
    Held out = std::move(*it);
    tokens.erase(it);
    return out;
  }

  void deliver_through(int round) {
    while (!pending_.empty() && pending_.begin()->first <= round) {
      auto node = pending_.extract(pending_.begin());
      const int due = node.key();
      for (const auto& pd : node.mapped()) {
        if (pd.kind == ActionKind::Send) {
          Held h = take(pd.node, pd.first);
          if (opts_.record_events) {
            ReplayEvent ev;
            ev.kind = ReplayEvent::Kind::Delivery;
            ev.round = due;
            ev.node = pd.target;
            ev.from = pd.node;
            ev.token = h.members;
            result_.events.push_back(std::move(ev));
          }
          nodes_[pd.target].push_back({std::move(h.members), next_seq_++, false});
        } else {
          Held x = take(pd.node, pd.first);
          Held y = take(pd.node, pd.second);
          Token merged = merge_tokens(x.members, y.members);
          if (opts_.record_events) {
            ReplayEvent ev;
            ev.kind = ReplayEvent::Kind::Merge;
            ev.round = due;
            ev.node = pd.node;
            ev.token = merged;
            ev.left = std::move(x.members);
            ev.right = std::move(y.members);
            result_.events.push_back(std::move(ev));
          }
          nodes_[pd.node].push_back({std::move(merged), next_seq_++, false});
        }
      }
    }
  }

  TokenState snapshot() const {
    TokenState st;
    st.held.resize(nodes_.size());
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      std::vector<const Held*> order;
      for (const auto& h : nodes_[v]) order.push_back(&h);
      std::sort(order.begin(), order.end(),
                [](const Held* x, const Held* y) { return x->seq < y->seq; });
      for (const Held* h : order) st.held[v].push_back(h->members);
    }
    return st;
  }

  ReplayResult finish() {
    result_.final_state = snapshot();
    return std::move(result_);
  }

  const Graph& g_;
  NetworkParams p_;
  ReplayOptions opts_;
  std::vector<std::vector<Held>> nodes_;
  std::vector<int> busy_until_;
  std::map<int, std::vector<Pending>> pending_;
  long long next_seq_ = 0;
  ReplayResult result_;
};

ValidationReport report_from(const ReplayResult& res, const Schedule& s,
                             bool require_single) {
  ValidationReport rep;
  rep.final_token_count = res.final_state.token_count();
  rep.violation = res.violation;
  if (!rep.violation && require_single && rep.final_token_count != 1) {
    rep.violation = Violation{s.length, -1, 'e',
                              std::to_string(rep.final_token_count) +
                                  " tokens remain after round " +
                                  std::to_string(s.length)};
  }
  rep.valid = !rep.violation;
  return rep;
}

}  // namespace

ReplayResult replay(const Graph& g, const NetworkParams& p, const Schedule& s,
                    const TokenState& start, const ReplayOptions& opts) {
  check_params(p);
  check_well_formed(g, s);
  Engine engine(g, p, start, opts);
  return engine.run(s);
}

ValidationReport validate_schedule(const Graph& g, const NetworkParams& p,
                                   const Schedule& s) {
  return report_from(replay(g, p, s, initial_state(g.n())), s, true);
}

ValidationReport validate_fragment(const Graph& g, const NetworkParams& p,
                                   const Schedule& s, const TokenState& start) {
  return report_from(replay(g, p, s, start), s, false);
}

std::vector<TokenState> simulate(const Graph& g, const NetworkParams& p,
                                 const Schedule& s) {
  ReplayOptions opts;
  opts.record_trace = true;
  auto res = replay(g, p, s, initial_state(g.n()), opts);
  if (res.violation) {
    const auto& v = *res.violation;
    throw ScheduleError("rule (" + std::string(1, v.rule) + ") at round " +
                        std::to_string(v.round) + ", node " +
                        std::to_string(v.node) + ": " + v.message);
  }
  return std::move(res.trace);
}

}  // namespace tokensched
