#include "mpc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "mpc/errors.hpp"
#include "mpc/oracle.hpp"
#include "mpc/regularizer.hpp"

namespace mpc {

OracleInput apply_J(const MpcInstance& inst, const SaddleState& w) {
  if (!shape_matches(inst, w)) throw ShapeError("apply_J: point does not match the instance");
  OracleInput g;
  g.x = matvec_transpose(inst.covering(), w.z);
  const auto pty = matvec_transpose(inst.packing(), w.y);
  for (std::size_t j = 0; j < g.x.size(); ++j) g.x[j] -= pty[j];

  double ysum = 0.0;
  double zsum = 0.0;
  for (double v : w.y) ysum += v;
  for (double v : w.z) zsum += v;
  g.u = ysum - zsum;

  g.y = matvec(inst.packing(), w.x);
  for (double& v : g.y) v -= w.u;
  g.z = matvec(inst.covering(), w.x);
  for (double& v : g.z) v = w.u - v;
  return g;
}

double primal_dual_gap(const MpcInstance& inst, const SaddleState& w) {
  if (!in_domain(inst, w)) throw DomainError("primal_dual_gap: point outside W");
  const auto g = apply_J(inst, w);
  double gap = g.u;
  for (double v : g.x) gap += std::max(0.0, v);
  double ybest = 0.0;
  for (double v : g.y) ybest = std::max(ybest, v);
  double zbest = 0.0;
  for (double v : g.z) zbest = std::max(zbest, v);
  return gap + ybest + zbest;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kFeasible:
      return "feasible";
    case SolveStatus::kInfeasibleCertified:
      return "infeasible";
    case SolveStatus::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

InstanceStats stats_of(const MpcInstance& inst) {
  return {inst.n(), inst.p(), inst.c(), inst.nnz(), inst.width()};
}

namespace {

// z = e_row on the input instance; valid whenever the row cannot reach 1 even
// with every variable at its upper bound.
Certificate single_row_certificate(const MpcInstance& inst, std::size_t row) {
  Certificate cert;
  cert.instance = inst;
  cert.y.assign(inst.p(), 0.0);
  cert.z.assign(inst.c(), 0.0);
  cert.z[row] = 1.0;
  for (std::size_t i = 0; i < inst.p(); ++i) cert.packing_rows.push_back({i, false});
  for (std::size_t j = 0; j < inst.c(); ++j) cert.covering_rows.push_back(j);
  cert.margin = verify_certificate(inst, cert.y, cert.z).margin;
  cert.on_input = true;
  return cert;
}

SaddleState average(const SaddleState& sum, std::size_t t) {
  const double inv = 1.0 / static_cast<double>(t);
  SaddleState w = sum;
  for (double& v : w.x) v = std::clamp(v * inv, 0.0, 1.0);
  for (double& v : w.y) v *= inv;
  for (double& v : w.z) v *= inv;
  w.u = 1.0;
  return w;
}

void accumulate(SaddleState& dst, const SaddleState& src, double factor) {
  for (std::size_t j = 0; j < dst.x.size(); ++j) dst.x[j] += factor * src.x[j];
  dst.u += factor * src.u;
  for (std::size_t i = 0; i < dst.y.size(); ++i) dst.y[i] += factor * src.y[i];
  for (std::size_t i = 0; i < dst.z.size(); ++i) dst.z[i] += factor * src.z[i];
}

void count_apply_J(WorkStats& work, const MpcInstance& inst) {
  work.matvecs += 4;
  work.nnz_ops += 2 * inst.nnz();
}

}  // namespace

SolveReport solve(const MpcInstance& inst, const SolverConfig& cfg) {
  if (!(cfg.eps > 0.0) || !std::isfinite(cfg.eps)) throw DomainError("solve: eps must be positive");
  const double delta = cfg.delta.value_or(cfg.eps / 2.0);
  if (!(delta > 0.0 && delta <= cfg.eps)) throw DomainError("solve: delta must lie in (0, eps]");
  if (cfg.trace_every && *cfg.trace_every == 0) throw DomainError("solve: trace_every must be >= 1");
  if (!(cfg.budget_factor > 0.0)) throw DomainError("solve: budget_factor must be positive");

  const auto started = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.eps = cfg.eps;
  rep.delta = delta;
  rep.input_stats = stats_of(inst);
  const auto finish = [&](SolveReport& r) -> SolveReport {
    r.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return std::move(r);
  };

  const auto checked = validate(inst);
  rep.log = checked.log;
  if (checked.status == ValidationOutcome::Status::kInfeasible) {
    rep.status = SolveStatus::kInfeasibleCertified;
    rep.certificate = single_row_certificate(inst, checked.empty_covering_rows.front());
    return finish(rep);
  }

  const auto norm = normalize(checked.cleaned);
  if (norm.trivially_infeasible) {
    rep.log.push_back("covering row " + std::to_string(*norm.infeasible_row) +
                      " cannot be met by its unpacked variables");
    auto cert = single_row_certificate(inst, *norm.infeasible_row);
    if (cert.margin > kFeasibilityTol) {
      rep.status = SolveStatus::kInfeasibleCertified;
      rep.certificate = std::move(cert);
    }
    return finish(rep);
  }
  if (norm.trivially_feasible) {
    rep.log.push_back("solution found during width reduction");
    if (check_epsilon_feasible(inst, *norm.trivially_feasible, cfg.eps).feasible) {
      rep.status = SolveStatus::kFeasible;
      rep.x = *norm.trivially_feasible;
    }
    return finish(rep);
  }

  const MpcInstance& work_inst = norm.instance;
  rep.normalized_stats = stats_of(work_inst);
  const auto params = build_params(work_inst);
  rep.rho = params.rho;

  std::size_t budget =
      static_cast<std::size_t>(std::ceil(cfg.budget_factor * 2.0 * params.rho / cfg.eps));
  if (cfg.max_iters) budget = std::min(budget, *cfg.max_iters);
  budget = std::max<std::size_t>(budget, 1);
  rep.budget = budget;
  const std::size_t every = cfg.trace_every.value_or(std::max<std::size_t>(1, (budget + 99) / 100));

  Oracle oracle(work_inst, params);
  SaddleState sum = SaddleState::zeros(work_inst);
  SaddleState probe = sum;
  SaddleState last = SaddleState::cold_start(work_inst);

  for (std::size_t t = 1; t <= budget; ++t) {
    // s ← s + Φ(J s + 2 J Φ(J s)); J is linear, so the second input is J(s + 2v).
    const auto first = oracle.solve(apply_J(work_inst, sum), delta, &last, &rep.work);
    count_apply_J(rep.work, work_inst);
    probe = sum;
    accumulate(probe, first.w, 2.0);
    auto second = oracle.solve(apply_J(work_inst, probe), delta, &first.w, &rep.work);
    count_apply_J(rep.work, work_inst);
    accumulate(sum, second.w, 1.0);
    last = std::move(second.w);
    rep.iterations = t;

    const bool at_budget = t == budget;
    if (t % every != 0 && !at_budget) continue;

    const auto mean = average(sum, t);
    const double gap = primal_dual_gap(work_inst, mean);
    rep.gap_trace.push_back({t, gap, delta + params.rho / static_cast<double>(t)});
    rep.final_gap = gap;
    if (!cfg.early_exit && !at_budget) continue;

    auto x = lift_solution(norm, mean.x);
    if (check_epsilon_feasible(inst, x, cfg.eps).feasible) {
      rep.status = SolveStatus::kFeasible;
      rep.x = std::move(x);
      return finish(rep);
    }
    const auto cc = verify_certificate(work_inst, mean.y, mean.z);
    if (cc.valid) {
      Certificate cert;
      cert.instance = work_inst;
      cert.y = mean.y;
      cert.z = mean.z;
      for (const auto& origin : norm.packing_rows) {
        cert.packing_rows.push_back(
            origin.box ? origin : PackingRowOrigin{checked.kept_packing_rows[origin.index], false});
      }
      cert.covering_rows = norm.covering_rows;
      cert.margin = cc.margin;
      cert.on_input = false;
      rep.status = SolveStatus::kInfeasibleCertified;
      rep.certificate = std::move(cert);
      return finish(rep);
    }
  }
  rep.log.push_back("iteration budget exhausted without a decision");
  return finish(rep);
}

}  // namespace mpc
