#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpc/sparse_matrix.hpp"

namespace mpc {

/// Absolute slack applied to every constraint and box comparison.
inline constexpr double kFeasibilityTol = 1e-9;

/// Feasibility problem { x ∈ [0,1]^n : P x ≤ 1, C x ≥ 1 } with P, C ≥ 0.
class MpcInstance {
 public:
  MpcInstance() = default;
  MpcInstance(SparseMatrix packing, SparseMatrix covering);

  const SparseMatrix& packing() const noexcept { return packing_; }
  const SparseMatrix& covering() const noexcept { return covering_; }
  std::size_t n() const noexcept { return packing_.ncols(); }
  std::size_t p() const noexcept { return packing_.nrows(); }
  std::size_t c() const noexcept { return covering_.nrows(); }
  std::size_t nnz() const noexcept { return packing_.nnz() + covering_.nnz(); }
  /// Largest nonzero count over all packing and covering rows.
  std::size_t width() const;

 private:
  SparseMatrix packing_;
  SparseMatrix covering_;
};

struct ValidationOutcome {
  enum class Status { kOk, kInfeasible };
  Status status = Status::kOk;
  /// Empty packing rows removed; columns untouched.
  MpcInstance cleaned;
  /// Input index of each packing row kept in `cleaned`.
  std::vector<std::size_t> kept_packing_rows;
  std::vector<std::size_t> dropped_packing_rows;
  std::vector<std::size_t> empty_covering_rows;
  /// Columns appearing in neither matrix; lift-back sets them to 1.
  std::vector<std::size_t> free_columns;
  std::vector<std::string> log;
};

ValidationOutcome validate(const MpcInstance& inst);

struct ColumnCopy {
  std::size_t original;
  double scale;  // original x += x̄ / scale
};

struct FixedColumn {
  enum class Reason { kFree, kPureCovering };
  std::size_t column;
  double value;
  Reason reason;
};

struct ColumnMap {
  std::size_t original_columns = 0;
  std::vector<ColumnCopy> copies;  // one per transformed column
  std::vector<FixedColumn> fixed;  // columns eliminated from the transformed instance
};

/// Origin of a transformed packing row: an input row, or the box bound of a
/// split column made explicit.
struct PackingRowOrigin {
  std::size_t index;
  bool box = false;
};

/// Output of the width-reduction transform. Packing entries are at most 1,
/// covering entries at most 2, and x̄ ∈ [0,1] per transformed column.
struct NormalizedInstance {
  MpcInstance instance;
  ColumnMap map;
  std::vector<PackingRowOrigin> packing_rows;
  std::vector<std::size_t> covering_rows;  // input index per transformed covering row
  std::vector<double> covering_scale;      // transformed row = input row * scale
  /// Set when a solution of the input is known without solving.
  std::optional<std::vector<double>> trivially_feasible;
  bool trivially_infeasible = false;
  /// Covering row (input index) left unsatisfiable by pure-covering variables.
  std::optional<std::size_t> infeasible_row;
};

/// Width-reduction transform. Requires an instance without empty rows (see
/// validate); throws DomainError otherwise.
NormalizedInstance normalize(const MpcInstance& inst);

/// Maps a transformed point back to the input variables, clipping to the box.
std::vector<double> lift_solution(const NormalizedInstance& norm, std::span<const double> xbar);

struct FeasibilityCheck {
  bool feasible = false;
  double max_packing = 0.0;   // max_i (Px)_i, 0 when p = 0
  double min_covering = 0.0;  // min_i (Cx)_i, +inf when c = 0
  double box_violation = 0.0;
};

/// x ∈ [0,1]^n, Px ≤ (1+eps)1 and Cx ≥ (1-eps)1, all with kFeasibilityTol slack.
FeasibilityCheck check_epsilon_feasible(const MpcInstance& inst, std::span<const double> x,
                                        double eps);

struct CertificateCheck {
  bool valid = false;
  double margin = 0.0;
};

/// Exact infimum over the box of yᵀ(Px−1) + zᵀ(1−Cx). A margin above
/// kFeasibilityTol proves the instance infeasible.
CertificateCheck verify_certificate(const MpcInstance& inst, std::span<const double> y,
                                    std::span<const double> z);

}  // namespace mpc
