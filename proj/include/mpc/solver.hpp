#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mpc/instance.hpp"
#include "mpc/saddle.hpp"
#include "mpc/work_stats.hpp"

namespace mpc {

/// J w for the antisymmetric operator whose bilinear form w̄ᵀJw is the
/// primal-dual gap pairing. Blocks: x ← −Pᵀy + Cᵀz, u ← 1ᵀy − 1ᵀz,
/// y ← Px − u·1, z ← −Cx + u·1.
OracleInput apply_J(const MpcInstance& inst, const SaddleState& w);

/// sup over w̄ ∈ W of w̄ᵀJw, evaluated in closed form. Throws DomainError when
/// w ∉ W.
double primal_dual_gap(const MpcInstance& inst, const SaddleState& w);

struct SolverConfig {
  double eps = 0.1;
  std::optional<double> delta;             // oracle accuracy, default eps/2
  std::optional<std::size_t> max_iters;    // caps the ⌈2ρ/eps⌉ budget
  std::optional<std::size_t> trace_every;  // default max(1, ⌈T/100⌉)
  /// Multiplies the ⌈2ρ/eps⌉ budget (before the max_iters cap).
  double budget_factor = 1.0;
  /// When false, termination tests run only at the budget.
  bool early_exit = true;
};

enum class SolveStatus { kFeasible, kInfeasibleCertified, kUndetermined };

const char* to_string(SolveStatus s);

/// Multipliers (y, z) certifying infeasibility of `instance`, which is either
/// the input itself or its width-reduced form (equivalent for feasibility).
struct Certificate {
  MpcInstance instance;
  std::vector<double> y;
  std::vector<double> z;
  /// Input-instance labels of each multiplier; box rows name a column.
  std::vector<PackingRowOrigin> packing_rows;
  std::vector<std::size_t> covering_rows;
  double margin = 0.0;
  bool on_input = false;  // true when `instance` is the unmodified input
};

struct TracePoint {
  std::size_t t;
  double gap;
  double envelope;  // δ + ρ/t
};

struct InstanceStats {
  std::size_t n = 0, p = 0, c = 0, nnz = 0, width = 0;
};

InstanceStats stats_of(const MpcInstance& inst);

struct SolveReport {
  SolveStatus status = SolveStatus::kUndetermined;
  std::vector<double> x;  // input-space solution when feasible
  std::optional<Certificate> certificate;
  std::size_t iterations = 0;
  std::size_t budget = 0;
  std::vector<TracePoint> gap_trace;
  std::optional<double> final_gap;
  double eps = 0.0;
  double delta = 0.0;
  double rho = 0.0;
  InstanceStats input_stats;
  InstanceStats normalized_stats;
  WorkStats work;
  double wall_time_s = 0.0;
  std::vector<std::string> log;
};

/// Validates, width-reduces and runs the area-convex dual extrapolation loop.
/// A Feasible report's x passes check_epsilon_feasible on `inst` at cfg.eps; an
/// InfeasibleCertified report's certificate passes verify_certificate.
SolveReport solve(const MpcInstance& inst, const SolverConfig& cfg);

inline const std::vector<TracePoint>& gap_trace(const SolveReport& r) { return r.gap_trace; }

}  // namespace mpc
