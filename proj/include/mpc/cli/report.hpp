#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpc/densest.hpp"
#include "mpc/instance.hpp"
#include "mpc/solver.hpp"

namespace mpc::cli {

/// Machine-readable solve report. Keys are fixed; absent parts are null.
/// With timing off every wall-clock field is 0 so equal runs serialize equally.
nlohmann::ordered_json report_json(const SolveReport& rep, bool timing = true);

/// Human-oriented summary; not schema-stable.
std::string report_text(const SolveReport& rep, bool timing = true);

/// Rows t,gap,envelope from the gap trace.
void write_trace_csv(std::ostream& out, const SolveReport& rep);

/// Sidecar for a normalized instance: column copies, fixed columns, row origins.
nlohmann::ordered_json column_map_json(const NormalizedInstance& norm, const ValidationOutcome& checked);

nlohmann::ordered_json dsg_json(const DsgResult& res, const Graph& g, double eps,
                                const std::vector<std::string>& warnings, bool timing = true);
std::string dsg_text(const DsgResult& res, const Graph& g, double eps, bool timing = true);

}  // namespace mpc::cli
