#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "mpc/instance.hpp"
#include "mpc/saddle.hpp"

namespace mpc {

/// 6√3, the factor making the composite regularizer area convex with respect
/// to 2√3 times the constraint operator.
inline constexpr double kRegularizerScale = 10.392304845413264;

/// t log t with 0 log 0 = 0.
inline double xlogx(double t) { return t > 0.0 ? t * std::log(t) : 0.0; }

/// b·a·log a + β·b·log b on [0,1] × [0,∞), β ≥ 2.
double gadget(double a, double b, double beta);

/// Determinant of the gadget Hessian, β/a − (1 + log a)²; independent of b.
double gadget_hessian_det(double a, double beta);

/// Analytic Hessian [[β/b, 1 + log a], [1 + log a, b/a]] for a, b > 0 (row-major).
std::array<double, 4> gadget_hessian(double a, double b, double beta);

struct RegularizerParams {
  std::vector<double> packing_weights;   // 2‖P‖∞ / ‖P_i‖₁
  std::vector<double> covering_weights;  // 2‖C‖∞ / ‖C_i‖₁
  double packing_norm = 0.0;             // ‖P‖∞
  double covering_norm = 0.0;            // ‖C‖∞
  double scale = kRegularizerScale;
  double rho = 0.0;                      // 6√3 φ ranges over [−rho, 0] on W
};

/// Lower bound magnitude of Σ y log y over the k-dimensional extended simplex,
/// floored so that it stays positive for k = 1.
double entropy_floor(std::size_t k);

/// Throws DomainError if any packing or covering row is empty.
RegularizerParams build_params(const MpcInstance& inst);

/// Scaled regularizer 6√3 φ(w). Throws DomainError when w ∉ W.
double phi(const RegularizerParams& params, const MpcInstance& inst, const SaddleState& w);

}  // namespace mpc
