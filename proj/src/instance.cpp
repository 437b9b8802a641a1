#include "mpc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mpc/errors.hpp"

namespace mpc {

MpcInstance::MpcInstance(SparseMatrix packing, SparseMatrix covering)
    : packing_(std::move(packing)), covering_(std::move(covering)) {
  if (packing_.ncols() != covering_.ncols()) {
    throw ShapeError("packing has " + std::to_string(packing_.ncols()) +
                     " columns but covering has " + std::to_string(covering_.ncols()));
  }
}

std::size_t MpcInstance::width() const {
  return std::max(mpc::width(packing_), mpc::width(covering_));
}

ValidationOutcome validate(const MpcInstance& inst) {
  ValidationOutcome out;
  const auto& pk = inst.packing();
  const auto& cv = inst.covering();

  for (std::size_t j = 0; j < cv.nrows(); ++j) {
    if (cv.row_nnz(j) == 0) {
      out.status = ValidationOutcome::Status::kInfeasible;
      out.empty_covering_rows.push_back(j);
      out.log.push_back("covering row " + std::to_string(j) + " is empty: 0 >= 1 cannot hold");
    }
  }

  std::vector<Triplet> kept;
  for (std::size_t i = 0; i < pk.nrows(); ++i) {
    if (pk.row_nnz(i) == 0) {
      out.dropped_packing_rows.push_back(i);
      out.log.push_back("packing row " + std::to_string(i) + " is empty: dropped");
      continue;
    }
    const std::size_t r = out.kept_packing_rows.size();
    out.kept_packing_rows.push_back(i);
    const auto cols = pk.row_cols(i);
    const auto vals = pk.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) kept.push_back({r, cols[k], vals[k]});
  }

  std::vector<bool> used(inst.n(), false);
  for (const auto* m : {&pk, &cv}) {
    for (std::size_t i = 0; i < m->nrows(); ++i) {
      for (std::size_t j : m->row_cols(i)) used[j] = true;
    }
  }
  for (std::size_t j = 0; j < inst.n(); ++j) {
    if (!used[j]) {
      out.free_columns.push_back(j);
      out.log.push_back("column " + std::to_string(j) + " is unconstrained: fixed at 1");
    }
  }

  out.cleaned = MpcInstance(
      SparseMatrix::from_triplets(out.kept_packing_rows.size(), inst.n(), std::move(kept)), cv);
  return out;
}

namespace {

struct Entry {
  std::size_t row;
  double value;
};

std::vector<std::vector<Entry>> columns_of(const SparseMatrix& m) {
  std::vector<std::vector<Entry>> cols(m.ncols());
  for (std::size_t i = 0; i < m.nrows(); ++i) {
    const auto c = m.row_cols(i);
    const auto v = m.row_values(i);
    for (std::size_t k = 0; k < c.size(); ++k) cols[c[k]].push_back({i, v[k]});
  }
  return cols;
}

// Smallest k >= 1 with 2^k >= r, exact when r is a power of two.
int ceil_log2(double r) {
  int k = std::max(1, static_cast<int>(std::ceil(std::log2(r))));
  while (std::ldexp(1.0, k) < r) ++k;
  while (k > 1 && std::ldexp(1.0, k - 1) >= r) --k;
  return k;
}

constexpr double kResidualTol = 1e-12;

}  // namespace

NormalizedInstance normalize(const MpcInstance& inst) {
  const auto& pk = inst.packing();
  const auto& cv = inst.covering();
  for (std::size_t i = 0; i < pk.nrows(); ++i) {
    if (pk.row_nnz(i) == 0) throw DomainError("normalize: empty packing row; run validate first");
  }
  for (std::size_t j = 0; j < cv.nrows(); ++j) {
    if (cv.row_nnz(j) == 0) throw DomainError("normalize: empty covering row; run validate first");
  }

  const std::size_t n = inst.n();
  const auto pcols = columns_of(pk);
  const auto ccols = columns_of(cv);

  NormalizedInstance out;
  out.map.original_columns = n;

  // Pure-covering columns: raise each just enough for its rows (at most 1) and
  // carry the unmet remainder of partially covered rows.
  std::vector<double> residual(cv.nrows(), 1.0);
  std::vector<bool> alive(cv.nrows(), true);
  std::vector<double> fixed_value(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!pcols[i].empty()) continue;
    double v = 0.0;
    bool touches = false;
    for (const auto& e : ccols[i]) {
      if (!alive[e.row]) continue;
      touches = true;
      v = std::max(v, residual[e.row] / e.value);
    }
    v = touches ? std::min(1.0, v) : 1.0;
    for (const auto& e : ccols[i]) {
      if (!alive[e.row]) continue;
      residual[e.row] -= e.value * v;
      if (residual[e.row] <= kResidualTol) alive[e.row] = false;
    }
    fixed_value[i] = v;
    out.map.fixed.push_back({i, v,
                             ccols[i].empty() ? FixedColumn::Reason::kFree
                                              : FixedColumn::Reason::kPureCovering});
  }

  auto prescribed = [&]() {
    std::vector<double> x(n, 0.0);
    for (const auto& f : out.map.fixed) x[f.column] = f.value;
    return x;
  };

  std::vector<std::size_t> new_row(cv.nrows(), 0);
  for (std::size_t j = 0; j < cv.nrows(); ++j) {
    if (!alive[j]) continue;
    bool reachable = false;
    for (std::size_t col : cv.row_cols(j)) reachable = reachable || !pcols[col].empty();
    if (!reachable) {
      out.trivially_infeasible = true;
      out.infeasible_row = j;
      return out;
    }
    new_row[j] = out.covering_rows.size();
    out.covering_rows.push_back(j);
    out.covering_scale.push_back(1.0 / residual[j]);
  }
  if (out.covering_rows.empty()) {
    out.trivially_feasible = prescribed();
    return out;
  }
  const std::size_t cbar = out.covering_rows.size();

  for (std::size_t i = 0; i < pk.nrows(); ++i) out.packing_rows.push_back({i, false});

  std::vector<Triplet> pt;
  std::vector<Triplet> ct;
  std::size_t next_col = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pcols[i].empty()) continue;
    double pmax = 0.0;
    for (const auto& e : pcols[i]) pmax = std::max(pmax, e.value);
    // The box x_i <= 1 acts as a packing row with entry 1.
    const bool box_dominates = pmax < 1.0;
    const double m = std::max(1.0, pmax);

    std::vector<Entry> cov;  // live covering rows, transformed indices
    for (const auto& e : ccols[i]) {
      if (alive[e.row]) cov.push_back({new_row[e.row], e.value / residual[e.row]});
    }
    double cmax = 0.0;
    for (const auto& e : cov) cmax = std::max(cmax, e.value);
    double cmin = cov.size() == cbar ? std::numeric_limits<double>::infinity() : 0.0;
    for (const auto& e : cov) cmin = std::min(cmin, e.value);

    if (cmax <= m) {
      for (const auto& e : pcols[i]) pt.push_back({e.row, next_col, e.value / m});
      for (const auto& e : cov) ct.push_back({e.row, next_col, e.value / m});
      out.map.copies.push_back({i, m});
      ++next_col;
      continue;
    }
    if (cmin >= m) {
      auto x = prescribed();
      x[i] = 1.0 / m;
      out.trivially_feasible = std::move(x);
      return out;
    }
    const int copies = ceil_log2(cmax / m);
    const std::size_t box_row = out.packing_rows.size();
    if (box_dominates) out.packing_rows.push_back({i, true});
    for (int l = 1; l <= copies; ++l) {
      const double scale = std::ldexp(m, l - 1);
      const double cap = std::ldexp(m, l);
      for (const auto& e : pcols[i]) pt.push_back({e.row, next_col, e.value / scale});
      for (const auto& e : cov) ct.push_back({e.row, next_col, std::min(e.value, cap) / scale});
      if (box_dominates) pt.push_back({box_row, next_col, m / scale});
      out.map.copies.push_back({i, scale});
      ++next_col;
    }
  }

  out.instance = MpcInstance(SparseMatrix::from_triplets(out.packing_rows.size(), next_col, pt),
                             SparseMatrix::from_triplets(cbar, next_col, ct));
  return out;
}

std::vector<double> lift_solution(const NormalizedInstance& norm, std::span<const double> xbar) {
  if (norm.trivially_feasible) return *norm.trivially_feasible;
  if (xbar.size() != norm.map.copies.size()) {
    throw ShapeError("lift_solution: expected " + std::to_string(norm.map.copies.size()) +
                     " transformed values, got " + std::to_string(xbar.size()));
  }
  std::vector<double> x(norm.map.original_columns, 0.0);
  for (std::size_t k = 0; k < xbar.size(); ++k) {
    const double v = xbar[k];
    if (!(v >= -kFeasibilityTol && v <= 1.0 + kFeasibilityTol)) {
      throw DomainError("lift_solution: transformed value outside [0, 1]");
    }
    const auto& copy = norm.map.copies[k];
    x[copy.original] += std::clamp(v, 0.0, 1.0) / copy.scale;
  }
  for (double& v : x) v = std::min(v, 1.0);
  for (const auto& f : norm.map.fixed) x[f.column] = f.value;
  return x;
}

FeasibilityCheck check_epsilon_feasible(const MpcInstance& inst, std::span<const double> x,
                                        double eps) {
  if (x.size() != inst.n()) throw ShapeError("check_epsilon_feasible: wrong vector length");
  if (!(eps >= 0.0)) throw DomainError("check_epsilon_feasible: eps must be nonnegative");
  FeasibilityCheck out;
  for (double v : x) {
    out.box_violation = std::max({out.box_violation, -v, v - 1.0});
  }
  const auto px = matvec(inst.packing(), x);
  const auto cx = matvec(inst.covering(), x);
  out.max_packing = px.empty() ? 0.0 : *std::max_element(px.begin(), px.end());
  out.min_covering =
      cx.empty() ? std::numeric_limits<double>::infinity() : *std::min_element(cx.begin(), cx.end());
  out.feasible = out.box_violation <= kFeasibilityTol &&
                 out.max_packing <= 1.0 + eps + kFeasibilityTol &&
                 out.min_covering >= 1.0 - eps - kFeasibilityTol;
  return out;
}

CertificateCheck verify_certificate(const MpcInstance& inst, std::span<const double> y,
                                    std::span<const double> z) {
  if (y.size() != inst.p() || z.size() != inst.c()) {
    throw ShapeError("verify_certificate: multiplier lengths do not match the instance");
  }
  double ysum = 0.0;
  double zsum = 0.0;
  for (double v : y) {
    if (!(v >= 0.0)) throw DomainError("verify_certificate: negative packing multiplier");
    ysum += v;
  }
  for (double v : z) {
    if (!(v >= 0.0)) throw DomainError("verify_certificate: negative covering multiplier");
    zsum += v;
  }
  if (ysum > 1.0 + kFeasibilityTol || zsum > 1.0 + kFeasibilityTol) {
    throw DomainError("verify_certificate: multipliers outside the extended simplex");
  }
  const auto pty = matvec_transpose(inst.packing(), y);
  const auto ctz = matvec_transpose(inst.covering(), z);
  double margin = zsum - ysum;
  for (std::size_t j = 0; j < inst.n(); ++j) margin += std::min(0.0, pty[j] - ctz[j]);
  return {margin > kFeasibilityTol, margin};
}

}  // namespace mpc
