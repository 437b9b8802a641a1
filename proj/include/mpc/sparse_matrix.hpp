#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mpc {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Immutable nonnegative sparse matrix in CSR layout.
///
/// Column indices are strictly increasing within a row and every stored value
/// is positive; zeros are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  /// An all-empty matrix of the given shape.
  SparseMatrix(std::size_t nrows, std::size_t ncols);

  /// Duplicated cells are summed and zero values dropped. Throws DomainError on
  /// negative or non-finite values and ShapeError on out-of-range indices.
  static SparseMatrix from_triplets(std::size_t nrows, std::size_t ncols,
                                    std::vector<Triplet> triplets);

  /// Row-major dense input; zeros are skipped.
  static SparseMatrix from_dense(const std::vector<std::vector<double>>& rows,
                                 std::size_t ncols);

  std::size_t nrows() const noexcept { return nrows_; }
  std::size_t ncols() const noexcept { return ncols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> row_cols(std::size_t i) const noexcept {
    return {col_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_values(std::size_t i) const noexcept {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::size_t row_nnz(std::size_t i) const noexcept { return row_ptr_[i + 1] - row_ptr_[i]; }

  /// Value at (i, j), zero when not stored.
  double at(std::size_t i, std::size_t j) const;

  /// Triplets in row-major order.
  std::vector<Triplet> triplets() const;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// A x.
std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x);
/// Aᵀ y.
std::vector<double> matvec_transpose(const SparseMatrix& a, std::span<const double> y);

// In-place variants writing into preallocated output (resized as needed).
void matvec_into(const SparseMatrix& a, std::span<const double> x, std::vector<double>& out);
void matvec_transpose_into(const SparseMatrix& a, std::span<const double> y,
                           std::vector<double>& out);

std::vector<double> row_l1_norms(const SparseMatrix& a);
/// ‖A‖∞→∞, the largest row sum; 0 for an empty matrix.
double inf_operator_norm(const SparseMatrix& a);
/// Largest number of nonzeros in any row.
std::size_t width(const SparseMatrix& a);

}  // namespace mpc
