#include "mpc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mpc/errors.hpp"

namespace mpc {

std::vector<double> project_simplex_plus(std::span<const double> v) {
  double sum = 0.0;
  for (double t : v) {
    if (!(t >= 0.0)) throw DomainError("project_simplex_plus: negative entry");
    sum += t;
  }
  std::vector<double> out(v.begin(), v.end());
  if (sum > 1.0) {
    for (double& t : out) t /= sum;
  }
  return out;
}

namespace {

double x_coordinate(double a, double d) {
  if (d > 0.0) {
    const double arg = a / d - 1.0;
    return arg >= 0.0 ? 1.0 : std::exp(arg);
  }
  return a > 0.0 ? 1.0 : 0.0;
}

// proj_{Δ⁺}(exp(expo)) without overflow: normalize through log-sum-exp when
// the unprojected mass would exceed 1.
void exp_project(std::vector<double>& expo, std::vector<double>& out) {
  out.resize(expo.size());
  if (expo.empty()) return;
  const double top = *std::max_element(expo.begin(), expo.end());
  double tail = 0.0;
  for (double e : expo) tail += std::exp(e - top);
  if (top + std::log(tail) <= 0.0) {
    for (std::size_t i = 0; i < expo.size(); ++i) out[i] = std::exp(expo[i]);
  } else {
    for (std::size_t i = 0; i < expo.size(); ++i) out[i] = std::exp(expo[i] - top) / tail;
  }
}

// Exponent of the unconstrained stationary point, (a − A·xlogx)/b − 1.
void dual_exponents(std::span<const double> a, double a_scale, const std::vector<double>& axl,
                    double b, std::vector<double>& expo) {
  expo.resize(axl.size());
  for (std::size_t i = 0; i < axl.size(); ++i) expo[i] = (a[i] / a_scale - axl[i]) / b - 1.0;
}

void count(WorkStats* stats, const SparseMatrix& m) {
  if (!stats) return;
  ++stats->matvecs;
  stats->nnz_ops += m.nnz();
}

}  // namespace

std::vector<double> x_step(std::span<const double> a, std::span<const double> y,
                           std::span<const double> z, const MpcInstance& inst) {
  if (a.size() != inst.n()) throw ShapeError("x_step: gradient length does not match n");
  const auto pty = matvec_transpose(inst.packing(), y);
  const auto ctz = matvec_transpose(inst.covering(), z);
  std::vector<double> x(inst.n());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = x_coordinate(a[j], pty[j] + ctz[j]);
  return x;
}

DualBlocks yz_step(std::span<const double> a1, std::span<const double> a2,
                   std::span<const double> x, const MpcInstance& inst,
                   const RegularizerParams& params) {
  if (a1.size() != inst.p() || a2.size() != inst.c()) {
    throw ShapeError("yz_step: gradient lengths do not match the instance");
  }
  std::vector<double> xl(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) xl[j] = xlogx(x[j]);
  std::vector<double> expo;
  DualBlocks out;
  dual_exponents(a1, 1.0, matvec(inst.packing(), xl), 2.0 * (params.packing_norm + 1.0), expo);
  exp_project(expo, out.y);
  dual_exponents(a2, 1.0, matvec(inst.covering(), xl), 2.0 * (params.covering_norm + 1.0), expo);
  exp_project(expo, out.z);
  return out;
}

Oracle::Oracle(const MpcInstance& inst, const RegularizerParams& params)
    : inst_(inst), params_(params) {
  if (params.packing_weights.size() != inst.p() || params.covering_weights.size() != inst.c()) {
    throw ShapeError("Oracle: regularizer parameters do not match the instance");
  }
  packing_entropy_coef_ = row_l1_norms(inst.packing());
  for (std::size_t i = 0; i < inst.p(); ++i) packing_entropy_coef_[i] *= params.packing_weights[i];
  covering_entropy_coef_ = row_l1_norms(inst.covering());
  for (std::size_t i = 0; i < inst.c(); ++i) {
    covering_entropy_coef_[i] *= params.covering_weights[i];
  }
}

std::size_t Oracle::round_budget(double delta) const {
  const double r = std::log2(params_.rho / delta);
  return std::max<std::size_t>(3, r > 0.0 ? static_cast<std::size_t>(std::ceil(r)) : 0);
}

void Oracle::refresh_xlogx(std::span<const double> x, WorkStats* stats) {
  xl_.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) xl_[j] = xlogx(x[j]);
  matvec_into(inst_.packing(), xl_, pxl_);
  matvec_into(inst_.covering(), xl_, cxl_);
  count(stats, inst_.packing());
  count(stats, inst_.covering());
}

void Oracle::dual_step(const OracleInput& in, std::vector<double>& y, std::vector<double>& z) {
  dual_exponents(in.y, params_.scale, pxl_, 2.0 * (params_.packing_norm + 1.0), expo_);
  exp_project(expo_, y);
  dual_exponents(in.z, params_.scale, cxl_, 2.0 * (params_.covering_norm + 1.0), expo_);
  exp_project(expo_, z);
}

void Oracle::primal_step(const OracleInput& in, const std::vector<double>& y,
                         const std::vector<double>& z, std::vector<double>& x, WorkStats* stats) {
  matvec_transpose_into(inst_.packing(), y, pty_);
  matvec_transpose_into(inst_.covering(), z, ctz_);
  count(stats, inst_.packing());
  count(stats, inst_.covering());
  x.resize(inst_.n());
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = x_coordinate(in.x[j] / params_.scale, pty_[j] + ctz_[j]);
  }
}

// Uses pxl_/cxl_, which must correspond to w.x; u is fixed at 1 on W.
double Oracle::objective(const OracleInput& in, const SaddleState& w) const {
  double reg = 0.0;
  for (std::size_t i = 0; i < w.y.size(); ++i) {
    const double yl = xlogx(w.y[i]);
    reg += w.y[i] * pxl_[i] + packing_entropy_coef_[i] * yl + 2.0 * yl;
  }
  for (std::size_t i = 0; i < w.z.size(); ++i) {
    const double zl = xlogx(w.z[i]);
    reg += w.z[i] * cxl_[i] + covering_entropy_coef_[i] * zl + 2.0 * zl;
  }
  return in.dot(w) - params_.scale * reg;
}

OracleResult Oracle::solve(const OracleInput& input, double delta, const SaddleState* warm,
                           WorkStats* stats) {
  if (!(delta > 0.0)) throw DomainError("oso: delta must be positive");
  if (!shape_matches(inst_, input)) throw ShapeError("oso: input does not match the instance");
  if (warm && warm->x.size() != inst_.n()) throw ShapeError("oso: warm start has wrong size");

  OracleResult res;
  res.w = SaddleState::cold_start(inst_);
  if (warm) {
    for (std::size_t j = 0; j < inst_.n(); ++j) res.w.x[j] = std::clamp(warm->x[j], 0.0, 1.0);
    if (shape_matches(inst_, *warm) && in_domain(inst_, *warm, 1e-12)) {
      res.w.y = warm->y;
      res.w.z = warm->z;
    }
  }
  refresh_xlogx(res.w.x, stats);
  res.objective = objective(input, res.w);
  res.round_objectives.push_back(res.objective);

  const std::size_t budget = round_budget(delta);
  for (std::size_t k = 1; k <= budget; ++k) {
    dual_step(input, res.w.y, res.w.z);
    primal_step(input, res.w.y, res.w.z, res.w.x, stats);
    refresh_xlogx(res.w.x, stats);
    const double value = objective(input, res.w);
    const double gain = value - res.objective;
    res.objective = value;
    res.round_objectives.push_back(value);
    res.rounds = k;
    if (gain < delta / 4.0) break;
  }
  if (stats) {
    ++stats->oracle_calls;
    stats->oracle_rounds += res.rounds;
  }
  return res;
}

OracleResult oso(const OracleInput& input, double delta, const MpcInstance& inst,
                 const RegularizerParams& params, const std::optional<SaddleState>& warm,
                 WorkStats* stats) {
  Oracle oracle(inst, params);
  return oracle.solve(input, delta, warm ? &*warm : nullptr, stats);
}

}  // namespace mpc
