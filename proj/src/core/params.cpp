#include "tokensched/params.hpp"

#include "tokensched/errors.hpp"

namespace tokensched {

void check_params(const NetworkParams& p) {
  if (p.tc < 1 || p.tm < 1) {
    throw InputError("tc and tm must be positive integers");
  }
}

bool costs_incommensurate(const NetworkParams& p) {
  return p.tc % p.tm != 0 && p.tm % p.tc != 0;
}

}  // namespace tokensched
