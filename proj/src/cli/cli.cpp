#include "tokensched/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tokensched/approx.hpp"
#include "tokensched/bounds.hpp"
#include "tokensched/brute.hpp"
#include "tokensched/errors.hpp"
#include "tokensched/generators.hpp"
#include "tokensched/hardness.hpp"
#include "tokensched/io.hpp"
#include "tokensched/optcomplete.hpp"
#include "tokensched/replay.hpp"

namespace tokensched::cli {

std::string format_run_report(const RunReport& r) {
  std::ostringstream os;
  os << "command: " << r.command << '\n';
  std::optional<LowerBounds> lb;
  if (r.graph) {
    const Graph& g = *r.graph;
    os << "graph: n=" << g.n() << " m=" << g.m();
    if (g.n() > 0 && is_connected(g)) {
      os << " D=" << diameter(g) << " radius=" << radius(g);
      if (r.params) lb = lower_bounds(g, *r.params);
    } else {
      os << " disconnected";
    }
    os << '\n';
  }
  if (r.params) os << "params: tc=" << r.params->tc << " tm=" << r.params->tm << '\n';
  if (r.length) os << "length: " << *r.length << '\n';
  if (lb) {
    os << "lower_bounds: compute=" << lb->compute_lb << " radius=" << lb->radius_lb
       << " combined=" << lb->combined_lb << '\n';
    if (r.length && lb->combined_lb > 0) {
      os << "ratio: " << std::fixed << std::setprecision(4)
         << static_cast<double>(*r.length) / lb->combined_lb << std::defaultfloat << '\n';
    }
  }
  if (r.seed) os << "seed: " << *r.seed << '\n';
  for (const auto& note : r.notes) os << "note: " << note << '\n';
  os << "wall_seconds: " << std::fixed << std::setprecision(3) << r.wall_seconds << '\n';
  return os.str();
}

namespace {

struct Common {
  std::string out_path;
  bool quiet = false;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  Common common;
  RunReport report;
};

void emit(Context& ctx, const std::string& text) {
  if (ctx.common.out_path.empty()) {
    ctx.out << text;
    return;
  }
  std::ofstream f(ctx.common.out_path, std::ios::binary);
  if (!f) throw InputError("cannot open output file " + ctx.common.out_path);
  f << text;
  if (!f) throw InputError("failed writing " + ctx.common.out_path);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, RunReport& report) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TOKENSCHED_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw InputError("TOKENSCHED_SEED is not an unsigned integer");
    report.notes.push_back("seed taken from TOKENSCHED_SEED");
    return v;
  }
  report.notes.push_back("no seed given; using 0");
  return 0;
}

NetworkParams params_from(int tc, int tm, RunReport& report) {
  NetworkParams p{tc, tm};
  check_params(p);
  if (costs_incommensurate(p)) {
    report.notes.push_back("warning: neither tc nor tm divides the other");
  }
  report.params = p;
  return p;
}

std::string graph_text(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out_path, "Write the main output here instead of stdout");
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Token network aggregation schedules", "tokensched"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx{out, err, {}, {}};
  bool quiet = false;
  app.add_flag("--quiet", quiet, "Suppress the run report");

  int tc = 1;
  int tm = 1;
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--tc", tc, "Rounds per merge")->capture_default_str();
    sub->add_option("--tm", tm, "Rounds per send")->capture_default_str();
  };
  std::string graph_path;
  std::string schedule_path;
  std::optional<std::uint64_t> seed_flag;
  std::function<int()> action;
  int n = 0;
  int R = 0;
  int nmax = 0;
  int rows = 0;
  int cols = 0;
  double prob = 0.0;
  double eps = 1.0;
  std::string scheduler = "approx";
  std::string report_path;
  std::optional<int> limit;

  {
    auto* sub = app.add_subcommand("complete", "Optimal schedule on the complete graph K_n");
    sub->add_option("--n", n, "Number of nodes")->required()->check(CLI::Range(1, 1 << 22));
    add_params(sub);
    add_common(sub, ctx.common);
    sub->callback([&] {
      action = [&] {
        const NetworkParams p = params_from(tc, tm, ctx.report);
        Schedule s = complete::opt_complete(n, p);
        if (n <= 2048) ctx.report.graph = complete_graph(n);
        ctx.report.length = s.length;
        emit(ctx, schedule_to_string(s));
        return kOk;
      };
    });
  }

  {
    auto* sub = app.add_subcommand("approx", "Randomized schedule on an arbitrary graph");
    sub->add_option("--graph", graph_path, "Graph file")->required();
    sub->add_option("--seed", seed_flag, "Seed (falls back to TOKENSCHED_SEED)");
    sub->add_option("--report", report_path, "Write the per-iteration CSV here");
    add_params(sub);
    add_common(sub, ctx.common);
    sub->callback([&] {
      action = [&] {
        const NetworkParams p = params_from(tc, tm, ctx.report);
        const std::uint64_t seed = resolve_seed(seed_flag, ctx.report);
        const Graph g = load_graph(graph_path);
        ctx.report.graph = g;
        ctx.report.seed = seed;
        approx::SolveResult res = approx::solve_tc(g, p, seed);
        ctx.report.length = res.schedule.length;
        emit(ctx, schedule_to_string(res.schedule));
        if (!report_path.empty()) {
          std::ofstream f(report_path, std::ios::binary);
          if (!f) throw InputError("cannot open report file " + report_path);
          f << approx::report_csv(res, seed);
        }
        return kOk;
      };
    });
  }

  {
    auto* sub = app.add_subcommand("brute", "Exact optimum by exhaustive search (tiny graphs)");
    sub->add_option("--graph", graph_path, "Graph file")->required();
    sub->add_option("--limit", limit, "Largest schedule length to try");
    add_params(sub);
    add_common(sub, ctx.common);
    sub->callback([&] {
      action = [&] {
        const NetworkParams p = params_from(tc, tm, ctx.report);
        const Graph g = load_graph(graph_path);
        ctx.report.graph = g;
        brute::BruteOptions opts;
        opts.limit = limit;
        brute::OracleResult res = brute::brute_opt(g, p, opts);
        ctx.report.length = res.opt_length;
        ctx.out << "opt_length " << res.opt_length << '\n';
        if (!ctx.common.out_path.empty()) emit(ctx, schedule_to_string(res.schedule));
        return kOk;
      };
    });
  }

  {
    auto* sub = app.add_subcommand("validate", "Check a schedule against a graph");
    sub->add_option("--graph", graph_path, "Graph file")->required();
    sub->add_option("--schedule", schedule_path, "Schedule file")->required();
    add_params(sub);
    sub->callback([&] {
      action = [&] {
        const NetworkParams p = params_from(tc, tm, ctx.report);
        const Graph g = load_graph(graph_path);
        const Schedule s = load_schedule(schedule_path);
        ctx.report.graph = g;
        ctx.report.length = s.length;
        check_well_formed(g, s);
        const ValidationReport v = validate_schedule(g, p, s);
        if (v.valid) {
          ctx.out << "valid\n";
          return kOk;
        }
        if (v.violation) {
          ctx.out << "invalid rule=" << v.violation->rule << " round=" << v.violation->round
                  << " node=" << v.violation->node << ": " << v.violation->message << '\n';
        } else {
          ctx.out << "invalid rule=e tokens=" << v.final_token_count << '\n';
        }
        return kInvalidSchedule;
      };
    });
  }

  {
    auto* sub = app.add_subcommand("simulate", "Token placement at every round boundary");
    sub->add_option("--graph", graph_path, "Graph file")->required();
    sub->add_option("--schedule", schedule_path, "Schedule file")->required();
    add_params(sub);
    add_common(sub, ctx.common);
    sub->callback([&] {
      action = [&] {
        const NetworkParams p = params_from(tc, tm, ctx.report);
        const Graph g = load_graph(graph_path);
        const Schedule s = load_schedule(schedule_path);
        ctx.report.graph = g;
        ctx.report.length = s.length;
        check_well_formed(g, s);
        ReplayOptions ro;
        ro.record_trace = true;
        const ReplayResult rr = replay(g, p, s, initial_state(g.n()), ro);
        std::ostringstream os;
        for (std::size_t k = 0; k < rr.trace.size(); ++k) {
          const TokenState& st = rr.trace[k];
          os << "round " << k + 1 << " tokens=" << st.token_count() << ':';
          for (int v = 0; v < g.n(); ++v) {
            for (const Token& t : st.held[v]) {
              os << ' ' << v << "={";
              for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
              os << '}';
            }
          }
          os << '\n';
        }
        int code = kOk;
        if (rr.violation) {
          os << "violation rule=" << rr.violation->rule << " round=" << rr.violation->round
             << " node=" << rr.violation->node << ": " << rr.violation->message << '\n';
          code = kInvalidSchedule;
        } else if (rr.final_state.token_count() != 1) {
          os << "violation rule=e tokens=" << rr.final_state.token_count() << '\n';
          code = kInvalidSchedule;
        }
        emit(ctx, os.str());
        return code;
      };
    });
  }

  {
    auto* sub = app.add_subcommand("tree", "The tree T(R) as a parent array");
    sub->add_option("--R", R, "Round horizon")->required()->check(CLI::NonNegativeNumber);
    add_params(sub);
    add_common(sub, ctx.common);
    sub->callback([&] {
      action = [&] {
        const NetworkParams p = params_from(tc, tm, ctx.report);
        const complete::AggTree t = complete::build_tree(R, p);
        std::ostringstream os;
        os << "# T(" << R << ") tc=" << p.tc << " tm=" << p.tm << " root=" << t.root << '\n';
        os << t.size() << '\n';
        for (int v = 0; v < t.size(); ++v) os << (v ? " " : "") << t.parent[v];
        os << '\n';
        emit(ctx, os.str());
        return kOk;
      };
    });
  }

  {
    auto* sub = app.add_subcommand("stats", "Schedule lengths on K_n as CSV");
    sub->add_option("--nmax", nmax, "Largest n")->required()->check(CLI::PositiveNumber);
    add_params(sub);
    add_common(sub, ctx.common);
    sub->callback([&] {
      action = [&] {
        const NetworkParams p = params_from(tc, tm, ctx.report);
        std::ostringstream os;
        os << "n,naive_binary,pipelined_binary,optimal,compute_lb\n";
        for (int n = 1; n <= nmax; ++n) {
          const complete::Baselines b = complete::baseline_lengths(n, p);
          os << n << ',' << b.naive_binary << ',' << b.pipelined_binary << ',' << b.optimal << ','
             << b.compute_lb << '\n';
        }
        emit(ctx, os.str());
        return kOk;
      };
    });
  }

  {
    auto* gadget = app.add_subcommand("gadget", "Hardness gadgets");
    gadget->require_subcommand(1);
    auto* sub = gadget->add_subcommand("psi", "Hub-and-danglers gadget over a base graph");
    sub->add_option("--graph", graph_path, "Base graph file")->required();
    sub->add_option("--tm", tm, "Rounds per send")->required()->check(CLI::PositiveNumber);
    add_common(sub, ctx.common);
    sub->callback([&] {
      action = [&] {
        const Graph g = load_graph(graph_path);
        const hardness::PsiGadget gd = hardness::psi_transform(g, tm);
        ctx.report.graph = gd.graph;
        ctx.report.params = NetworkParams{1, tm};
        std::ostringstream os;
        os << "# psi gadget tm=" << tm << " base_n=" << g.n() << " hub=" << gd.a
           << " d_star=" << gd.d_star << " danglers=" << gd.beta.size() << '\n';
        os << graph_text(gd.graph);
        emit(ctx, os.str());
        return kOk;
      };
    });
  }

  {
    auto* sub = app.add_subcommand("mds", "Dominating set through the schedule gadget");
    sub->add_option("--graph", graph_path, "Graph file")->required();
    sub->add_option("--eps", eps, "Accuracy in (0, 1]")->capture_default_str();
    sub->add_option("--scheduler", scheduler, "brute or approx")
        ->check(CLI::IsMember({"brute", "approx"}))
        ->capture_default_str();
    sub->add_option("--seed", seed_flag, "Seed for the approx scheduler");
    add_common(sub, ctx.common);
    sub->callback([&] {
      action = [&] {
        const Graph g = load_graph(graph_path);
        ctx.report.graph = g;
        hardness::Scheduler sched;
        if (scheduler == "brute") {
          sched = [](const Graph& h, const NetworkParams& p) {
            brute::BruteOptions opts;
            opts.enforce_guard = false;
            return brute::brute_opt(h, p, opts).schedule;
          };
        } else {
          const std::uint64_t seed = resolve_seed(seed_flag, ctx.report);
          ctx.report.seed = seed;
          sched = [seed](const Graph& h, const NetworkParams& p) {
            return approx::solve_tc(h, p, seed).schedule;
          };
        }
        const hardness::MdsResult res = hardness::mds_apx(g, sched, eps);
        for (const auto& gs : res.guesses) {
          std::ostringstream note;
          note << "k_hat=" << gs.k_hat << " tm=" << gs.tm << " gadget_n=" << gs.gadget_nodes
               << " length=" << gs.schedule_length;
          if (gs.recovered) note << " recovered=" << gs.recovered_size;
          ctx.report.notes.push_back(note.str());
        }
        if (!res.warning.empty()) ctx.report.notes.push_back("warning: " + res.warning);
        std::ostringstream os;
        os << "size " << res.ds.size() << "\nset";
        for (int k : res.ds.kappa) os << ' ' << k;
        os << '\n';
        emit(ctx, os.str());
        return kOk;
      };
    });
  }

  {
    auto* gen = app.add_subcommand("gen", "Generate a graph file");
    gen->require_subcommand(1);
    auto* er = gen->add_subcommand("er", "Erdos-Renyi G(n, p), resampled until connected");
    er->add_option("--n", n, "Nodes")->required()->check(CLI::PositiveNumber);
    er->add_option("--p", prob, "Edge probability")->required()->check(CLI::Range(0.0, 1.0));
    er->add_option("--seed", seed_flag, "Seed (falls back to TOKENSCHED_SEED)");
    auto* grid = gen->add_subcommand("grid", "rows x cols grid");
    grid->add_option("--rows", rows, "Rows")->required()->check(CLI::PositiveNumber);
    grid->add_option("--cols", cols, "Columns")->required()->check(CLI::PositiveNumber);
    auto* star = gen->add_subcommand("star", "Star with node 0 at the center");
    star->add_option("--n", n, "Nodes")->required()->check(CLI::PositiveNumber);
    auto* path = gen->add_subcommand("path", "Path 0-1-...-(n-1)");
    path->add_option("--n", n, "Nodes")->required()->check(CLI::PositiveNumber);
    for (auto* sub : {er, grid, star, path}) add_common(sub, ctx.common);
    auto finish = [&](const Graph& g) {
      ctx.report.graph = g;
      emit(ctx, graph_text(g));
      return kOk;
    };
    er->callback([&, finish] {
      action = [&, finish] {
        const std::uint64_t seed = resolve_seed(seed_flag, ctx.report);
        ctx.report.seed = seed;
        return finish(random_connected_graph(n, prob, seed));
      };
    });
    grid->callback([&, finish] { action = [&, finish] { return finish(grid_graph(rows, cols)); }; });
    star->callback([&, finish] { action = [&, finish] { return finish(star_graph(n)); }; });
    path->callback([&, finish] { action = [&, finish] { return finish(path_graph(n)); }; });
  }

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("tokensched");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kBadInput;
  }

  std::ostringstream echo;
  for (std::size_t i = 1; i < argv_store.size(); ++i) echo << (i > 1 ? " " : "") << argv_store[i];
  ctx.report.command = echo.str();
  ctx.common.quiet = quiet;

  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    code = action ? action() : kBadInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const UnsolvableError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const ScheduleError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidSchedule;
  } catch (const SearchError& e) {
    err << "error: " << e.what() << '\n';
    return kSearchFailed;
  }
  ctx.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!ctx.common.quiet) err << format_run_report(ctx.report);
  return code;
}

int cli_dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_dispatch(args, std::cout, std::cerr);
}

}  // namespace tokensched::cli
