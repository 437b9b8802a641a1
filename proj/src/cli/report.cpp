#include "mpc/cli/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "mpc/cli/formats.hpp"

namespace mpc::cli {

using nlohmann::ordered_json;

namespace {

ordered_json stats_json(const InstanceStats& s) {
  return {{"n", s.n}, {"p", s.p}, {"c", s.c}, {"nnz", s.nnz}, {"width", s.width}};
}

ordered_json work_json(const WorkStats& w) {
  return {{"matvecs", w.matvecs},
          {"nnz_ops", w.nnz_ops},
          {"oracle_calls", w.oracle_calls},
          {"oracle_rounds", w.oracle_rounds}};
}

ordered_json row_origin_json(const PackingRowOrigin& o) {
  return o.box ? ordered_json{{"box_column", o.index}} : ordered_json{{"row", o.index}};
}

}  // namespace

ordered_json report_json(const SolveReport& rep, bool timing) {
  ordered_json j;
  j["status"] = to_string(rep.status);
  j["eps"] = rep.eps;
  j["delta"] = rep.delta;
  j["iterations"] = rep.iterations;
  j["budget"] = rep.budget;
  j["gap_final"] = rep.final_gap ? ordered_json(*rep.final_gap) : ordered_json(nullptr);
  j["x"] = rep.status == SolveStatus::kFeasible ? ordered_json(rep.x) : ordered_json(nullptr);
  if (rep.certificate) {
    const auto& c = *rep.certificate;
    ordered_json rows = ordered_json::array();
    for (const auto& o : c.packing_rows) rows.push_back(row_origin_json(o));
    j["certificate"] = {{"y", c.y},
                        {"z", c.z},
                        {"packing_rows", rows},
                        {"covering_rows", c.covering_rows},
                        {"margin", c.margin},
                        {"on_input", c.on_input}};
  } else {
    j["certificate"] = nullptr;
  }
  auto inst = stats_json(rep.input_stats);
  inst["rho"] = rep.rho;
  j["instance"] = inst;
  j["normalized"] = stats_json(rep.normalized_stats);
  j["work"] = work_json(rep.work);
  j["timings"] = {{"wall_time_s", timing ? rep.wall_time_s : 0.0}};
  j["log"] = rep.log;
  return j;
}

std::string report_text(const SolveReport& rep, bool timing) {
  std::ostringstream out;
  out << "status      " << to_string(rep.status) << '\n';
  out << "instance    n=" << rep.input_stats.n << " p=" << rep.input_stats.p << " c=" << rep.input_stats.c
      << " nnz=" << rep.input_stats.nnz << " width=" << rep.input_stats.width << '\n';
  out << "eps/delta   " << rep.eps << " / " << rep.delta << "  rho=" << rep.rho << '\n';
  out << "iterations  " << rep.iterations << " of " << rep.budget << '\n';
  if (rep.final_gap) out << "final gap   " << *rep.final_gap << '\n';
  out << "oracle      " << rep.work.oracle_calls << " calls, " << rep.work.oracle_rounds << " rounds\n";
  if (timing) out << "time        " << rep.wall_time_s << " s\n";
  if (rep.certificate) out << "certificate margin " << rep.certificate->margin << '\n';
  for (const auto& line : rep.log) out << "note        " << line << '\n';
  return out.str();
}

void write_trace_csv(std::ostream& out, const SolveReport& rep) {
  out << "t,gap,envelope\n";
  for (const auto& p : rep.gap_trace) {
    out << p.t << ',' << format_double(p.gap) << ',' << format_double(p.envelope) << '\n';
  }
}

ordered_json column_map_json(const NormalizedInstance& norm, const ValidationOutcome& checked) {
  ordered_json j;
  j["original_columns"] = norm.map.original_columns;
  ordered_json copies = ordered_json::array();
  for (const auto& c : norm.map.copies) copies.push_back({{"original", c.original}, {"scale", c.scale}});
  j["copies"] = copies;
  ordered_json fixed = ordered_json::array();
  for (const auto& f : norm.map.fixed) {
    fixed.push_back({{"column", f.column},
                     {"value", f.value},
                     {"reason", f.reason == FixedColumn::Reason::kFree ? "free" : "pure_covering"}});
  }
  j["fixed"] = fixed;
  ordered_json prow = ordered_json::array();
  for (const auto& o : norm.packing_rows) {
    prow.push_back(o.box ? row_origin_json(o) : row_origin_json({checked.kept_packing_rows[o.index], false}));
  }
  j["packing_rows"] = prow;
  j["covering_rows"] = norm.covering_rows;
  j["covering_scale"] = norm.covering_scale;
  j["dropped_packing_rows"] = checked.dropped_packing_rows;
  j["trivially_feasible"] = norm.trivially_feasible ? ordered_json(*norm.trivially_feasible) : ordered_json(nullptr);
  j["trivially_infeasible"] = norm.trivially_infeasible;
  j["infeasible_row"] = norm.infeasible_row ? ordered_json(*norm.infeasible_row) : ordered_json(nullptr);
  return j;
}

ordered_json dsg_json(const DsgResult& res, const Graph& g, double eps, const std::vector<std::string>& warnings,
                      bool timing) {
  ordered_json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["eps"] = eps;
  j["density_low"] = res.density_low;
  j["density_high"] = res.density_high;
  j["probe_count"] = res.probes.size();
  ordered_json probes = ordered_json::array();
  for (const auto& p : res.probes) {
    probes.push_back({{"density", p.density},
                      {"status", to_string(p.status)},
                      {"iterations", p.iterations},
                      {"attempts", p.attempts},
                      {"work", work_json(p.work)},
                      {"wall_time_s", timing ? p.wall_time_s : 0.0}});
  }
  j["probes"] = probes;
  j["subgraph"] = ordered_json::array();
  j["warnings"] = warnings;
  return j;
}

std::string dsg_text(const DsgResult& res, const Graph& g, double eps, bool timing) {
  std::ostringstream out;
  out << "graph    " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
  out << "density  [" << res.density_low << ", " << res.density_high << "] at eps " << eps << '\n';
  out << "probes   " << res.probes.size() << '\n';
  for (const auto& p : res.probes) {
    out << "  D=" << p.density << ' ' << to_string(p.status) << " iterations=" << p.iterations
        << " rounds=" << p.work.oracle_rounds;
    if (timing) out << " time=" << p.wall_time_s << 's';
    out << '\n';
  }
  return out.str();
}

}  // namespace mpc::cli
