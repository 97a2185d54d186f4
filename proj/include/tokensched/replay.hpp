#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tokensched/graph.hpp"
#include "tokensched/params.hpp"
#include "tokensched/schedule.hpp"

namespace tokensched {

// Sorted singleton ids merged into one token.
using Token = std::vector<int>;

// Tokens held per node at a round boundary. A token in transit is still
// listed at its sender, and the two inputs of a running merge stay listed
// separately, until the action completes.
struct TokenState {
  std::vector<std::vector<Token>> held;

  int token_count() const;
  int count_at(int v) const { return static_cast<int>(held[v].size()); }
  bool operator==(const TokenState&) const = default;
};

TokenState initial_state(int n);

// Rule ids: 'a' send without a token, 'b' compute with fewer than two,
// 'c' overlapping occupancy, 'd' window outside [1, length],
// 'e' more than one token left after the last round.
struct Violation {
  int round = 0;
  int node = -1;
  char rule = 'e';
  std::string message;
};

struct ValidationReport {
  bool valid = false;
  std::optional<Violation> violation;
  // Token count after round `length`, or at the first violation.
  int final_token_count = 0;
};

// Effect of one completed action, stamped with the round at whose start it
// became visible.
struct ReplayEvent {
  enum class Kind { Delivery, Merge };
  Kind kind = Kind::Delivery;
  int round = 0;
  int node = -1;  // receiver or merging node
  int from = -1;  // sender, deliveries only
  Token token;    // delivered token, or the merge result
  Token left;     // merge inputs
  Token right;
};

struct ReplayOptions {
  bool record_trace = false;
  bool record_events = false;
};

struct ReplayResult {
  std::optional<Violation> violation;
  TokenState final_state;
  // trace[k] is the state at the start of round k+1.
  std::vector<TokenState> trace;
  std::vector<ReplayEvent> events;
};

// Throws InputError for malformed actions (unknown node, self or
// non-neighbor target, unknown token id).
void check_well_formed(const Graph& g, const Schedule& s);

// Replays s from an arbitrary start state, stopping at the first rule
// violation among (a)-(d).
ReplayResult replay(const Graph& g, const NetworkParams& p, const Schedule& s,
                    const TokenState& start, const ReplayOptions& opts = {});

ValidationReport validate_schedule(const Graph& g, const NetworkParams& p,
                                   const Schedule& s);

// Checks rules (a)-(d) for a fragment run from `start`; `valid` ignores how
// many tokens remain.
ValidationReport validate_fragment(const Graph& g, const NetworkParams& p,
                                   const Schedule& s, const TokenState& start);

// Full token placement per round boundary; throws ScheduleError on a rule
// violation among (a)-(d).
std::vector<TokenState> simulate(const Graph& g, const NetworkParams& p,
                                 const Schedule& s);

}  // namespace tokensched
