#pragma once

#include <optional>
#include <vector>

#include "tokensched/params.hpp"

namespace tokensched {

enum class ActionKind { Send, Compute };

// One SEND or COMPUTE started at a 1-indexed round. An action started at
// round r occupies rounds r .. r+t-1 and takes effect at the start of r+t.
struct Action {
  int round = 1;
  int node = 0;
  ActionKind kind = ActionKind::Compute;
  int target = -1;
  // Lowest singleton id of the token to send; unset sends the oldest one.
  std::optional<int> token;

  int duration(const NetworkParams& p) const {
    return kind == ActionKind::Send ? p.tm : p.tc;
  }
  int last_round(const NetworkParams& p) const {
    return round + duration(p) - 1;
  }

  bool operator==(const Action&) const = default;
};

Action make_send(int round, int node, int target);
Action make_compute(int round, int node);

// Canonical action order: round, node, kind, target.
bool action_less(const Action& a, const Action& b);

struct Schedule {
  std::vector<Action> actions;
  int length = 0;

  void sort_actions();
  bool operator==(const Schedule&) const = default;
};

// Last round occupied by any action (0 when empty).
int last_occupied_round(const Schedule& s, const NetworkParams& p);

// Appends frag to base with every round shifted by offset; base.length
// becomes max(base.length, offset + frag.length).
void append_shifted(Schedule& base, const Schedule& frag, int offset);

}  // namespace tokensched
