#pragma once

#include <stdexcept>
#include <string>

namespace tokensched {

// Malformed input: bad file syntax, unknown node ids, non-neighbor targets.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The instance admits no schedule at all (disconnected graph).
class UnsolvableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A schedule violated the model rules where a valid one was required.
class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive search refused the instance or ran out of its round budget.
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive search proved no schedule fits within the requested length.
class NoScheduleWithinLimit : public SearchError {
 public:
  using SearchError::SearchError;
};

}  // namespace tokensched
