#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tokensched/graph.hpp"
#include "tokensched/params.hpp"

namespace tokensched::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidSchedule = 1,
  kBadInput = 2,
  // The exhaustive search refused the instance or ran out of budget.
  kSearchFailed = 3,
};

struct RunReport {
  std::string command;
  std::optional<Graph> graph;
  std::optional<NetworkParams> params;
  std::optional<int> length;
  std::optional<std::uint64_t> seed;
  double wall_seconds = 0.0;
  std::vector<std::string> notes;
};

// Multi-line summary: graph stats, bounds, length / combined_lb.
std::string format_run_report(const RunReport& report);

// args excludes the program name. Outputs go to `out` unless a subcommand
// is given --out; the RunReport, warnings and errors go to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_dispatch(int argc, const char* const* argv);

}  // namespace tokensched::cli
