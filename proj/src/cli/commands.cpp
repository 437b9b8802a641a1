#include "mpc/cli/commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include "mpc/cli/bench.hpp"
#include "mpc/cli/formats.hpp"
#include "mpc/cli/report.hpp"
#include "mpc/densest.hpp"
#include "mpc/errors.hpp"

namespace mpc::cli {

int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::kFeasible:
      return 0;
    case SolveStatus::kInfeasibleCertified:
      return 2;
    case SolveStatus::kUndetermined:
      return 3;
  }
  return 3;
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

struct SolveArgs {
  std::string input;
  double eps = 0.1;
  std::optional<double> delta;
  std::optional<std::size_t> max_iters;
  std::string trace;
  std::string output = "json";
  bool no_timing = false;
  bool no_early_exit = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const auto inst = load_instance(a.input);
  SolverConfig cfg;
  cfg.eps = a.eps;
  cfg.delta = a.delta;
  cfg.max_iters = a.max_iters;
  cfg.early_exit = !a.no_early_exit;
  const auto rep = solve(inst, cfg);
  if (!a.trace.empty()) {
    auto f = open_output(a.trace);
    write_trace_csv(f, rep);
  }
  if (a.output == "json") {
    out << report_json(rep, !a.no_timing).dump(2) << '\n';
  } else {
    out << report_text(rep, !a.no_timing);
  }
  return exit_code(rep.status);
}

struct NormalizeArgs {
  std::string input;
  std::string output;
  std::string map;
};

int cmd_normalize(const NormalizeArgs& a, std::ostream& out) {
  const auto inst = load_instance(a.input);
  const auto checked = validate(inst);
  if (checked.status == ValidationOutcome::Status::kInfeasible) {
    throw DomainError("covering row " + std::to_string(checked.empty_covering_rows.front()) +
                      " is empty; the instance is infeasible and has no normal form");
  }
  const auto norm = normalize(checked.cleaned);
  save_instance(a.output, norm.instance);
  const std::string map_path = a.map.empty() ? a.output + ".map.json" : a.map;
  auto f = open_output(map_path);
  f << column_map_json(norm, checked).dump(2) << '\n';
  for (const auto& line : checked.log) out << line << '\n';
  out << "wrote " << a.output << " (n=" << norm.instance.n() << " p=" << norm.instance.p()
      << " c=" << norm.instance.c() << ") and " << map_path << '\n';
  return 0;
}

struct DsgArgs {
  std::string graph;
  double eps = 0.1;
  std::string output = "json";
  bool no_timing = false;
};

int cmd_dsg(const DsgArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const auto g = load_edge_list(a.graph, warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  const auto res = binary_search_density(g, a.eps);
  if (a.output == "json") {
    out << dsg_json(res, g, a.eps, warnings, !a.no_timing).dump(2) << '\n';
  } else {
    out << dsg_text(res, g, a.eps, !a.no_timing);
  }
  return 0;
}

struct BenchArgs {
  std::string suite = "random";
  BenchConfig cfg;
  std::string out;
  bool no_timing = false;
};

int cmd_bench(BenchArgs a, std::ostream& out) {
  const auto rows = run_bench(a.cfg);
  if (a.out.empty()) {
    write_bench_csv(out, rows, !a.no_timing);
  } else {
    auto f = open_output(a.out);
    write_bench_csv(f, rows, !a.no_timing);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed packing-covering feasibility solver"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"json", "text"};

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Decide an instance file");
  solve_cmd->add_option("--input", sa.input, "Instance file")->required();
  solve_cmd->add_option("--eps", sa.eps, "Target accuracy")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--delta", sa.delta, "Oracle accuracy (default eps/2)");
  solve_cmd->add_option("--max-iters", sa.max_iters, "Iteration cap");
  solve_cmd->add_option("--trace", sa.trace, "Write the gap trace as CSV");
  solve_cmd->add_option("--output", sa.output, "Report format")->check(CLI::IsMember(formats));
  solve_cmd->add_flag("--no-timing", sa.no_timing, "Zero wall-clock fields in the report");
  solve_cmd->add_flag("--no-early-exit", sa.no_early_exit, "Run the full iteration budget");

  NormalizeArgs na;
  auto* norm_cmd = app.add_subcommand("normalize", "Write the width-reduced instance and its column map");
  norm_cmd->add_option("--input", na.input, "Instance file")->required();
  norm_cmd->add_option("--output", na.output, "Normalized instance file")->required();
  norm_cmd->add_option("--map", na.map, "Column map path (default <output>.map.json)");

  DsgArgs da;
  auto* dsg_cmd = app.add_subcommand("dsg", "Bracket the densest-subgraph density of an edge list");
  dsg_cmd->add_option("--graph", da.graph, "Edge-list file")->required();
  dsg_cmd->add_option("--eps", da.eps, "Relative bracket width")->check(CLI::Range(0.0, 0.5));
  dsg_cmd->add_option("--output", da.output, "Report format")->check(CLI::IsMember(formats));
  dsg_cmd->add_flag("--no-timing", da.no_timing, "Zero wall-clock fields in the report");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Run the seeded random benchmark suite");
  bench_cmd->add_option("--suite", ba.suite, "Instance family")->check(CLI::IsMember({"random"}));
  bench_cmd->add_option("--n", ba.cfg.sizes, "Comma-separated sizes (n = p = c)")->delimiter(',')->required();
  bench_cmd->add_option("--density", ba.cfg.density, "Nonzero probability per entry")
      ->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--width", ba.cfg.width, "Exact nonzeros per row; overrides --density");
  bench_cmd->add_option("--eps", ba.cfg.eps, "Comma-separated accuracies")->delimiter(',')->required();
  bench_cmd->add_option("--seed", ba.cfg.seed, "Generator seed");
  bench_cmd->add_option("--out", ba.out, "CSV path (default stdout)");
  bench_cmd->add_flag("--no-timing", ba.no_timing, "Write wall_time as 0");
  bool bench_full = false;
  bench_cmd->add_flag("--no-early-exit", bench_full, "Run every solve to its full budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve_cmd) return cmd_solve(sa, out);
    if (*norm_cmd) return cmd_normalize(na, out);
    if (*dsg_cmd) return cmd_dsg(da, out, err);
    ba.cfg.early_exit = !bench_full;
    return cmd_bench(ba, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace mpc::cli
