#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mpc/instance.hpp"
#include "mpc/regularizer.hpp"
#include "mpc/saddle.hpp"
#include "mpc/work_stats.hpp"

namespace mpc {

/// Projection onto { v ≥ 0, Σv ≤ 1 } for a nonnegative vector: rescales by
/// the ℓ1 norm only when it exceeds 1.
std::vector<double> project_simplex_plus(std::span<const double> v);

/// argmax over x ∈ [0,1]^n of aᵀx − φ(x, 1, y, z) for fixed (y, z), with a
/// already divided by the regularizer scale.
std::vector<double> x_step(std::span<const double> a, std::span<const double> y,
                           std::span<const double> z, const MpcInstance& inst);

struct DualBlocks {
  std::vector<double> y;
  std::vector<double> z;
};

/// argmax over (y, z) ∈ Δ⁺_p × Δ⁺_c of a1ᵀy + a2ᵀz − φ(x, 1, y, z), with a1, a2
/// already divided by the regularizer scale.
DualBlocks yz_step(std::span<const double> a1, std::span<const double> a2,
                   std::span<const double> x, const MpcInstance& inst,
                   const RegularizerParams& params);

struct OracleResult {
  SaddleState w;
  double objective = 0.0;               // inputᵀw − 6√3 φ(w)
  std::size_t rounds = 0;
  std::vector<double> round_objectives;  // entry 0 is the starting point
};

/// δ-optimal solution oracle for the scaled regularizer: approximately
/// maximizes inputᵀw − 6√3 φ(w) over W by alternating exact block maximization.
///
/// Runs at most max(3, ⌈log₂(ρ/δ)⌉) rounds and stops early once a round gains
/// less than δ/4. Holds scratch buffers, so one instance per thread.
class Oracle {
 public:
  Oracle(const MpcInstance& inst, const RegularizerParams& params);

  /// `warm` supplies the starting x; defaults to x = 1.
  OracleResult solve(const OracleInput& input, double delta, const SaddleState* warm = nullptr,
                     WorkStats* stats = nullptr);

  /// Round budget for accuracy `delta`.
  std::size_t round_budget(double delta) const;

 private:
  void refresh_xlogx(std::span<const double> x, WorkStats* stats);
  void dual_step(const OracleInput& in, std::vector<double>& y, std::vector<double>& z);
  void primal_step(const OracleInput& in, const std::vector<double>& y,
                   const std::vector<double>& z, std::vector<double>& x, WorkStats* stats);
  double objective(const OracleInput& in, const SaddleState& w) const;

  const MpcInstance& inst_;
  const RegularizerParams& params_;
  std::vector<double> packing_entropy_coef_;   // weight_i · ‖P_i‖₁
  std::vector<double> covering_entropy_coef_;  // weight_i · ‖C_i‖₁
  std::vector<double> xl_, pxl_, cxl_, pty_, ctz_, expo_;
};

/// Convenience wrapper constructing a temporary Oracle.
OracleResult oso(const OracleInput& input, double delta, const MpcInstance& inst,
                 const RegularizerParams& params,
                 const std::optional<SaddleState>& warm = std::nullopt,
                 WorkStats* stats = nullptr);

}  // namespace mpc
