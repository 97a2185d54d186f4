#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "tokensched/bounds.hpp"
#include "tokensched/brute.hpp"
#include "tokensched/errors.hpp"
#include "tokensched/optcomplete.hpp"
#include "tokensched/replay.hpp"

namespace tokensched::brute {

namespace {

// Per node: held tokens, rounds still busy, then arrivals at offsets
// 0..K-1 (offset j lands at the start of the round j+1 rounds ahead).
using State = std::string;

constexpr int kIdle = -1;
constexpr int kCompute = -2;

struct Candidate {
  State state;
  std::string key;
  int bound = 0;
  std::vector<std::pair<int, int>> moves;  // (node, option)
};

class Search {
 public:
  Search(const Graph& g, const NetworkParams& p, std::size_t max_states)
      : g_(g), p_(p), n_(g.n()), k_(std::max(p.tc, p.tm)), width_(2 + k_),
        max_states_(max_states), dist_(all_pairs_distances(g)) {
    build_twin_classes();
    for (int a = 0; a < n_; ++a) {
      std::vector<int> leaves;
      for (int v : g_.neighbors(a)) {
        if (g_.degree(v) == 1) leaves.push_back(v);
      }
      if (leaves.size() >= 3) pendants_.emplace_back(a, std::move(leaves));
    }
  }

  State initial() const {
    State s(static_cast<std::size_t>(n_ * width_), '\0');
    for (int v = 0; v < n_; ++v) s[v * width_] = 1;
    return s;
  }

  int bound(const State& s) const;

  // Returns true and fills `moves_by_round` if s finishes within `remaining`.
  bool dfs(const State& s, int remaining, int round);

  std::vector<Action> actions;

 private:
  int held(const State& s, int v) const { return static_cast<unsigned char>(s[v * width_]); }
  int busy(const State& s, int v) const { return static_cast<unsigned char>(s[v * width_ + 1]); }
  int incoming(const State& s, int v, int j) const {
    return static_cast<unsigned char>(s[v * width_ + 2 + j]);
  }
  static void bump(State& s, std::size_t idx, int delta) {
    s[idx] = static_cast<char>(static_cast<unsigned char>(s[idx]) + delta);
  }

  bool done(const State& s) const {
    int total = 0;
    for (int v = 0; v < n_; ++v) {
      total += held(s, v);
      for (int j = 0; j < k_; ++j) {
        if (incoming(s, v, j)) return false;
      }
    }
    return total == 1;
  }

  std::string canonical(const State& s) const;
  State advance(const State& s) const;
  void apply(State& s, int v, int option, int sign) const;
  std::vector<Candidate> successors(const State& s, const std::string& self_key) const;
  void build_twin_classes();

  const Graph& g_;
  NetworkParams p_;
  int n_;
  int k_;
  int width_;
  std::size_t max_states_;
  std::vector<std::vector<int>> dist_;
  std::vector<std::vector<int>> classes_;
  std::vector<bool> false_twin_class_;
  std::vector<std::pair<int, std::vector<int>>> pendants_;
  std::unordered_map<std::string, int> failed_;
};

void Search::build_twin_classes() {
  std::vector<int> rep(n_);
  std::iota(rep.begin(), rep.end(), 0);
  auto find = [&](int v) {
    while (rep[v] != v) v = rep[v] = rep[rep[v]];
    return v;
  };
  std::map<std::vector<int>, int> open_seen;
  std::map<std::vector<int>, int> closed_seen;
  for (int v = 0; v < n_; ++v) {
    std::vector<int> open = g_.neighbors(v);
    std::vector<int> closed = open;
    closed.insert(std::lower_bound(closed.begin(), closed.end(), v), v);
    for (auto* seen : {&open_seen, &closed_seen}) {
      const auto& key = seen == &open_seen ? open : closed;
      auto [it, fresh] = seen->emplace(key, v);
      if (!fresh) rep[find(v)] = find(it->second);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < n_; ++v) groups[find(v)].push_back(v);
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    classes_.push_back(members);
  }
  std::sort(classes_.begin(), classes_.end());
  for (const auto& c : classes_) {
    false_twin_class_.push_back(c.size() >= 2 && !g_.has_edge(c[0], c[1]));
  }
}

std::string Search::canonical(const State& s) const {
  std::string key;
  key.reserve(s.size());
  std::vector<std::string_view> records;
  for (const auto& c : classes_) {
    if (c.size() == 1) {
      key.append(s, c[0] * width_, width_);
      continue;
    }
    records.clear();
    for (int v : c) records.emplace_back(s.data() + v * width_, width_);
    std::sort(records.begin(), records.end());
    for (auto r : records) key.append(r);
  }
  return key;
}

State Search::advance(const State& s) const {
  State out = s;
  for (int v = 0; v < n_; ++v) {
    const std::size_t base = v * width_;
    if (out[base + 1]) bump(out, base + 1, -1);
    bump(out, base, static_cast<unsigned char>(out[base + 2]));
    for (int j = 0; j + 1 < k_; ++j) out[base + 2 + j] = out[base + 3 + j];
    out[base + 1 + k_] = 0;
  }
  return out;
}

void Search::apply(State& s, int v, int option, int sign) const {
  if (option == kIdle) return;
  const std::size_t base = v * width_;
  if (option == kCompute) {
    bump(s, base, -2 * sign);
    s[base + 1] = static_cast<char>(sign > 0 ? p_.tc : 0);
    bump(s, base + 2 + (p_.tc - 1), sign);
  } else {
    bump(s, base, -sign);
    s[base + 1] = static_cast<char>(sign > 0 ? p_.tm : 0);
    bump(s, option * width_ + 2 + (p_.tm - 1), sign);
  }
}

int Search::bound(const State& s) const {
  int tokens = 0;
  int last_arrival = 0;
  for (int v = 0; v < n_; ++v) {
    tokens += held(s, v);
    for (int j = 0; j < k_; ++j) {
      if (incoming(s, v, j)) {
        tokens += incoming(s, v, j);
        last_arrival = std::max(last_arrival, j + 1);
      }
    }
  }
  if (tokens <= 1) return last_arrival;

  int best = p_.tc * ceil_log2(tokens);

  // Every token's content must reach the node performing the final merge.
  std::vector<int> ready(n_, -1);  // when v can forward all it will hold
  std::vector<int> arrive(n_, -1);  // when all of v's tokens are at v
  for (int v = 0; v < n_; ++v) {
    int latest = held(s, v) ? 0 : -1;
    for (int j = 0; j < k_; ++j) {
      if (incoming(s, v, j)) latest = j + 1;
    }
    if (latest < 0) continue;
    arrive[v] = latest;
    ready[v] = std::max(latest, busy(s, v));
  }
  int gather = 1 << 29;
  for (int x = 0; x < n_; ++x) {
    int worst = busy(s, x);
    for (int y = 0; y < n_ && worst < gather; ++y) {
      if (arrive[y] < 0) continue;
      worst = std::max(worst, y == x ? arrive[y] : ready[y] + p_.tm * dist_[y][x]);
    }
    gather = std::min(gather, worst);
  }
  best = std::max(best, gather + p_.tc);

  // A hub with m loaded pendant leaves must handle at least m - 2 of their
  // tokens one operation at a time after the first one lands.
  for (const auto& [a, leaves] : pendants_) {
    int loaded = 0;
    int first = 1 << 29;
    for (int l : leaves) {
      if (ready[l] < 0) continue;
      ++loaded;
      first = std::min(first, ready[l] + p_.tm);
    }
    if (loaded >= 3) {
      best = std::max(best, std::max(first, busy(s, a)) + (loaded - 2) * p_.min_cost());
    }
  }
  return best;
}

std::vector<Candidate> Search::successors(const State& s,
                                          const std::string& self_key) const {
  struct Unit {
    std::vector<int> members;
    std::vector<int> options;
    bool multiset = false;
  };
  std::vector<Unit> units;
  auto options_of = [&](int v) {
    std::vector<int> opts;
    if (held(s, v) >= 2) opts.push_back(kCompute);
    if (held(s, v) >= 1) {
      for (int u : g_.neighbors(v)) opts.push_back(u);
    }
    opts.push_back(kIdle);
    return opts;
  };
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    std::map<std::string_view, std::vector<int>> by_record;
    for (int v : classes_[c]) {
      if (busy(s, v) || held(s, v) == 0) continue;
      if (false_twin_class_[c]) {
        by_record[std::string_view(s.data() + v * width_, width_)].push_back(v);
      } else {
        units.push_back({{v}, options_of(v), false});
      }
    }
    for (auto& [rec, members] : by_record) {
      units.push_back({members, options_of(members.front()), members.size() > 1});
    }
  }
  std::sort(units.begin(), units.end(),
            [](const Unit& a, const Unit& b) { return a.members.front() < b.members.front(); });

  std::vector<Candidate> out;
  std::unordered_set<std::string> seen{self_key};
  State work = s;
  std::vector<std::pair<int, int>> moves;
  // Two nodes swapping tokens over one edge is dominated by both idling.
  std::vector<int> sends_to(g_.n(), -1);

  auto emit = [&] {
    State next = advance(work);
    std::string key = canonical(next);
    if (!seen.insert(key).second) return;
    Candidate c;
    c.bound = bound(next);
    c.state = std::move(next);
    c.key = std::move(key);
    for (const auto& mv : moves) {
      if (mv.second != kIdle) c.moves.push_back(mv);
    }
    out.push_back(std::move(c));
  };

  auto recurse = [&](auto&& self, std::size_t ui, std::size_t mi, std::size_t lo) -> void {
    if (ui == units.size()) {
      emit();
      return;
    }
    const Unit& u = units[ui];
    if (mi == u.members.size()) {
      self(self, ui + 1, 0, 0);
      return;
    }
    const int v = u.members[mi];
    for (std::size_t oi = u.multiset ? lo : 0; oi < u.options.size(); ++oi) {
      const int opt = u.options[oi];
      if (opt >= 0 && sends_to[opt] == v) continue;
      if (opt >= 0) sends_to[v] = opt;
      apply(work, v, opt, +1);
      moves.emplace_back(v, opt);
      self(self, ui, mi + 1, oi);
      moves.pop_back();
      apply(work, v, opt, -1);
      sends_to[v] = -1;
    }
  };
  recurse(recurse, 0, 0, 0);

  std::stable_sort(out.begin(), out.end(),
                   [](const Candidate& a, const Candidate& b) { return a.bound < b.bound; });
  return out;
}

bool Search::dfs(const State& s, int remaining, int round) {
  if (done(s)) return true;
  if (remaining <= 0 || bound(s) > remaining) return false;
  std::string key = canonical(s);
  if (auto it = failed_.find(key); it != failed_.end() && it->second >= remaining) {
    return false;
  }
  for (const auto& c : successors(s, key)) {
    if (c.bound > remaining - 1) break;
    if (dfs(c.state, remaining - 1, round + 1)) {
      for (const auto& [v, option] : c.moves) {
        actions.push_back(option == kCompute ? make_compute(round, v)
                                             : make_send(round, v, option));
      }
      return true;
    }
  }
  if (failed_.size() >= max_states_) {
    throw SearchError("brute force exhausted its budget of " +
                      std::to_string(max_states_) + " states");
  }
  int& slot = failed_[key];
  slot = std::max(slot, remaining);
  return false;
}

}  // namespace

int max_singleton_distance(const Graph& g, const NetworkParams& p, const Schedule& s) {
  ReplayOptions opts;
  opts.record_events = true;
  auto res = replay(g, p, s, initial_state(g.n()), opts);
  if (res.violation) throw ScheduleError("schedule is invalid: " + res.violation->message);
  std::vector<int> sends(g.n(), 0);
  for (const auto& ev : res.events) {
    if (ev.kind != ReplayEvent::Kind::Delivery) continue;
    for (int a : ev.token) ++sends[a];
  }
  return sends.empty() ? 0 : *std::max_element(sends.begin(), sends.end());
}

OracleResult brute_opt(const Graph& g, const NetworkParams& p, const BruteOptions& opts) {
  check_params(p);
  if (g.n() < 1) throw InputError("brute force needs at least one node");
  const LowerBounds lb = lower_bounds(g, p);
  if (opts.enforce_guard &&
      (g.n() > opts.max_nodes || p.tc > opts.max_cost || p.tm > opts.max_cost)) {
    throw SearchError("instance exceeds the brute-force guard (n <= " +
                      std::to_string(opts.max_nodes) + ", tc, tm <= " +
                      std::to_string(opts.max_cost) + ")");
  }
  if (g.n() > 255) throw SearchError("brute force supports at most 255 nodes");
  const long long ub = trivial_upper_bound(g, p);
  const int limit = opts.limit ? *opts.limit : static_cast<int>(ub);

  Search search(g, p, opts.max_states);
  const auto start = search.initial();
  const int first = std::max(lb.combined_lb, search.bound(start));
  for (int L = first; L <= limit; ++L) {
    if (!search.dfs(start, L, 1)) continue;
    OracleResult res;
    res.opt_length = L;
    res.schedule.actions = std::move(search.actions);
    res.schedule.length = L;
    res.schedule.sort_actions();
    res.max_singleton_distance = max_singleton_distance(g, p, res.schedule);
    return res;
  }
  throw NoScheduleWithinLimit("no schedule within limit " + std::to_string(limit));
}

NStarTable n_star_table(int r_max, const NetworkParams& p, int max_nodes) {
  check_params(p);
  NStarTable table;
  const auto sizes = complete::tree_sizes(r_max, p);
  BruteOptions opts;
  opts.enforce_guard = false;
  // opt[n] = OPT(K_n), filled lazily; capped searches only prove "> R".
  std::vector<int> opt(max_nodes + 2, -1);
  auto solves_within = [&](int n, int R) {
    if (opt[n] >= 0) return opt[n] <= R;
    opts.limit = R;
    try {
      opt[n] = brute_opt(complete_graph(n), p, opts).opt_length;
      return true;
    } catch (const NoScheduleWithinLimit&) {
      return false;
    }
  };
  int n = 1;
  for (int R = 0; R <= r_max; ++R) {
    while (n + 1 <= max_nodes && solves_within(n + 1, R)) ++n;
    if (n + 1 > max_nodes) {
      table.truncated = true;
      table.warning = "N*(" + std::to_string(R) + ") needs cliques above " +
                      std::to_string(max_nodes) + " nodes; table stops at R = " +
                      std::to_string(R - 1);
      break;
    }
    table.entries.push_back({R, n, static_cast<long long>(sizes[R])});
  }
  return table;
}

}  // namespace tokensched::brute
