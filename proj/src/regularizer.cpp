#include "mpc/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mpc/errors.hpp"

namespace mpc {

double gadget(double a, double b, double beta) {
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("gadget: a must lie in [0, 1]");
  if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("gadget: b must be nonnegative");
  if (!(beta >= 2.0)) throw DomainError("gadget: beta must be at least 2");
  return b * xlogx(a) + beta * xlogx(b);
}

double gadget_hessian_det(double a, double beta) {
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("gadget_hessian_det: a must lie in (0, 1]");
  const double t = 1.0 + std::log(a);
  return beta / a - t * t;
}

std::array<double, 4> gadget_hessian(double a, double b, double beta) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("gadget_hessian: a and b must be positive");
  const double cross = 1.0 + std::log(a);
  return {beta / b, cross, cross, b / a};
}

double entropy_floor(std::size_t k) {
  if (k == 0) return 0.0;
  // min over Δ⁺_k of Σ y log y is −ln k for k ≥ 3 but −k/e for k ≤ 2.
  const double kk = static_cast<double>(k);
  return std::max(std::log(std::max(kk, 2.0)), std::min(kk, 2.0) / std::numbers::e);
}

namespace {

std::vector<double> row_weights(const SparseMatrix& m, double norm, const char* what) {
  auto sums = row_l1_norms(m);
  for (double& s : sums) {
    if (!(s > 0.0)) throw DomainError(std::string("build_params: empty ") + what + " row");
    s = 2.0 * norm / s;
  }
  return sums;
}

}  // namespace

RegularizerParams build_params(const MpcInstance& inst) {
  RegularizerParams params;
  params.packing_norm = inf_operator_norm(inst.packing());
  params.covering_norm = inf_operator_norm(inst.covering());
  params.packing_weights = row_weights(inst.packing(), params.packing_norm, "packing");
  params.covering_weights = row_weights(inst.covering(), params.covering_norm, "covering");

  // Sum of the lower bounds of the four terms of φ on W.
  const auto side = [](double norm, std::size_t rows) {
    if (rows == 0) return 0.0;
    return norm / std::numbers::e + (2.0 * norm + 2.0) * entropy_floor(rows);
  };
  params.rho = params.scale * (side(params.packing_norm, inst.p()) +
                               side(params.covering_norm, inst.c()));
  return params;
}

namespace {

double side_value(const SparseMatrix& m, const std::vector<double>& weights,
                  const std::vector<double>& xl, double ulogu, const std::vector<double>& v) {
  double total = 0.0;
  for (std::size_t i = 0; i < m.nrows(); ++i) {
    const auto cols = m.row_cols(i);
    const auto vals = m.row_values(i);
    double dot = 0.0;
    double rowsum = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      dot += vals[k] * xl[cols[k]];
      rowsum += vals[k];
    }
    const double vl = xlogx(v[i]);
    total += v[i] * dot + weights[i] * rowsum * vl;  // Σ_j A_ij γ_{w_i}(x_j, v_i)
    total += v[i] * ulogu + 2.0 * vl;                // γ₂(u, v_i)
  }
  return total;
}

}  // namespace

double phi(const RegularizerParams& params, const MpcInstance& inst, const SaddleState& w) {
  if (!in_domain(inst, w)) throw DomainError("phi: point outside W");
  std::vector<double> xl(w.x.size());
  for (std::size_t j = 0; j < w.x.size(); ++j) xl[j] = xlogx(std::clamp(w.x[j], 0.0, 1.0));
  const double ul = xlogx(w.u);
  return params.scale * (side_value(inst.packing(), params.packing_weights, xl, ul, w.y) +
                         side_value(inst.covering(), params.covering_weights, xl, ul, w.z));
}

}  // namespace mpc
