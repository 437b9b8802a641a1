#pragma once

#include <cstddef>
#include <vector>

#include "mpc/instance.hpp"

namespace mpc {

/// Point w = (x, u, y, z) of the joint primal-dual space. On the domain
/// W = [0,1]^n × {1} × Δ⁺_p × Δ⁺_c; the solver's running sums share the type.
struct SaddleState {
  std::vector<double> x;
  double u = 1.0;
  std::vector<double> y;
  std::vector<double> z;

  /// (1_n, 1, 0_p, 0_c).
  static SaddleState cold_start(const MpcInstance& inst);
  static SaddleState zeros(const MpcInstance& inst);
};

/// A linear functional on the joint space, blocked like SaddleState. Inputs
/// to the oracle and outputs of the J operator use this type.
struct OracleInput {
  std::vector<double> x;
  double u = 0.0;
  std::vector<double> y;
  std::vector<double> z;

  static OracleInput zeros(const MpcInstance& inst);
  double dot(const SaddleState& w) const;
};

bool shape_matches(const MpcInstance& inst, const SaddleState& w);
bool shape_matches(const MpcInstance& inst, const OracleInput& a);

/// Membership in W up to `tol`.
bool in_domain(const MpcInstance& inst, const SaddleState& w, double tol = kFeasibilityTol);

}  // namespace mpc
