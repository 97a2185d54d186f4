#include "tokensched/schedule.hpp"

#include <algorithm>
#include <tuple>

namespace tokensched {

Action make_send(int round, int node, int target) {
  Action a;
  a.round = round;
  a.node = node;
  a.kind = ActionKind::Send;
  a.target = target;
  return a;
}

Action make_compute(int round, int node) {
  Action a;
  a.round = round;
  a.node = node;
  a.kind = ActionKind::Compute;
  return a;
}

bool action_less(const Action& a, const Action& b) {
  return std::tuple(a.round, a.node, static_cast<int>(a.kind), a.target,
                    a.token.value_or(-1)) <
         std::tuple(b.round, b.node, static_cast<int>(b.kind), b.target,
                    b.token.value_or(-1));
}

void Schedule::sort_actions() {
  std::stable_sort(actions.begin(), actions.end(), action_less);
}

int last_occupied_round(const Schedule& s, const NetworkParams& p) {
  int last = 0;
  for (const auto& a : s.actions) last = std::max(last, a.last_round(p));
  return last;
}

void append_shifted(Schedule& base, const Schedule& frag, int offset) {
  for (Action a : frag.actions) {
    a.round += offset;
    base.actions.push_back(a);
  }
  base.length = std::max(base.length, offset + frag.length);
}

}  // namespace tokensched
