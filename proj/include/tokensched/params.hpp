#pragma once

namespace tokensched {

// Rounds per merge (tc) and per single-hop send (tm).
struct NetworkParams {
  int tc = 1;
  int tm = 1;

  int min_cost() const { return tc < tm ? tc : tm; }
  int max_cost() const { return tc < tm ? tm : tc; }
};

// Throws InputError unless tc >= 1 and tm >= 1.
void check_params(const NetworkParams& p);

// True when neither cost divides the other.
bool costs_incommensurate(const NetworkParams& p);

}  // namespace tokensched
