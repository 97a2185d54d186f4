#include "tokensched/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tokensched/errors.hpp"

namespace tokensched {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string field;
  while (in >> field) out.push_back(field);
  return out;
}

long long parse_int(const std::string& text, int line_no) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw InputError("line " + std::to_string(line_no) + ": expected an integer, got '" +
                     text + "'");
  }
  return value;
}

bool is_comment_or_blank(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

// Next non-comment line split into fields; false at end of input.
bool next_record(std::istream& in, int& line_no, std::vector<std::string>& fields) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    fields = split_fields(line);
    return true;
  }
  return false;
}

}  // namespace

Graph read_graph(std::istream& in) {
  int line_no = 0;
  std::vector<std::string> f;
  if (!next_record(in, line_no, f)) throw InputError("graph file is empty");
  if (f.size() != 2) {
    throw InputError("line " + std::to_string(line_no) + ": header must be 'n m'");
  }
  const long long n = parse_int(f[0], line_no);
  const long long m = parse_int(f[1], line_no);
  if (n < 0 || m < 0) throw InputError("negative node or edge count");
  Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_record(in, line_no, f)) {
      throw InputError("graph file ends after " + std::to_string(i) + " of " +
                       std::to_string(m) + " edges");
    }
    if (f.size() != 2) {
      throw InputError("line " + std::to_string(line_no) + ": edge must be 'u v'");
    }
    const long long u = parse_int(f[0], line_no);
    const long long v = parse_int(f[1], line_no);
    if (!(0 <= u && u < v && v < n)) {
      throw InputError("line " + std::to_string(line_no) +
                       ": edge must satisfy 0 <= u < v < n");
    }
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  if (next_record(in, line_no, f)) {
    throw InputError("line " + std::to_string(line_no) + ": data after the last edge");
  }
  return g;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  return read_graph(in);
}

Schedule read_schedule(std::istream& in) {
  int line_no = 0;
  std::vector<std::string> f;
  if (!next_record(in, line_no, f) || f.size() != 2 || f[0] != "TCSCHED" ||
      f[1] != "1") {
    throw InputError("schedule must start with 'TCSCHED 1'");
  }
  if (!next_record(in, line_no, f) || f.size() != 2 || f[0] != "length") {
    throw InputError("line " + std::to_string(line_no) + ": expected 'length L'");
  }
  Schedule s;
  s.length = static_cast<int>(parse_int(f[1], line_no));
  if (s.length < 0) throw InputError("schedule length must be nonnegative");
  while (next_record(in, line_no, f)) {
    const std::string at = "line " + std::to_string(line_no) + ": ";
    if (f.size() < 3) throw InputError(at + "action needs 'r v KIND'");
    Action a;
    a.round = static_cast<int>(parse_int(f[0], line_no));
    a.node = static_cast<int>(parse_int(f[1], line_no));
    if (f[2] == "COMPUTE") {
      if (f.size() != 3) throw InputError(at + "unexpected fields after COMPUTE");
      a.kind = ActionKind::Compute;
    } else if (f[2] == "SEND") {
      if (f.size() < 4 || f.size() > 5) {
        throw InputError(at + "SEND needs 'r v SEND u [token=k]'");
      }
      a.kind = ActionKind::Send;
      a.target = static_cast<int>(parse_int(f[3], line_no));
      if (f.size() == 5) {
        if (f[4].rfind("token=", 0) != 0) {
          throw InputError(at + "unknown field '" + f[4] + "'");
        }
        a.token = static_cast<int>(parse_int(f[4].substr(6), line_no));
      }
    } else {
      throw InputError(at + "unknown action kind '" + f[2] + "'");
    }
    s.actions.push_back(a);
  }
  return s;
}

void write_schedule(std::ostream& out, const Schedule& s) {
  Schedule sorted = s;
  sorted.sort_actions();
  out << "TCSCHED 1\nlength " << sorted.length << '\n';
  for (const auto& a : sorted.actions) {
    out << a.round << ' ' << a.node << ' ';
    if (a.kind == ActionKind::Compute) {
      out << "COMPUTE\n";
    } else {
      out << "SEND " << a.target;
      if (a.token) out << " token=" << *a.token;
      out << '\n';
    }
  }
}

Schedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open schedule file '" + path + "'");
  return read_schedule(in);
}

std::string schedule_to_string(const Schedule& s) {
  std::ostringstream out;
  write_schedule(out, s);
  return out.str();
}

}  // namespace tokensched
