#pragma once

#include <iosfwd>
#include <string>

#include "tokensched/graph.hpp"
#include "tokensched/schedule.hpp"

namespace tokensched {

// Graph text: optional '#' lines, then "n m", then m lines "u v", u < v.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
Graph load_graph(const std::string& path);

// Schedule text: "TCSCHED 1", "length L", then "r v SEND u [token=k]" or
// "r v COMPUTE" per line.
Schedule read_schedule(std::istream& in);
void write_schedule(std::ostream& out, const Schedule& s);
Schedule load_schedule(const std::string& path);

std::string schedule_to_string(const Schedule& s);

}  // namespace tokensched
