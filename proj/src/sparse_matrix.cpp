#include "mpc/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpc/errors.hpp"

namespace mpc {

SparseMatrix::SparseMatrix(std::size_t nrows, std::size_t ncols)
    : nrows_(nrows), ncols_(ncols), row_ptr_(nrows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t nrows, std::size_t ncols,
                                         std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row >= nrows || t.col >= ncols) {
      throw ShapeError("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                       ") outside " + std::to_string(nrows) + "x" + std::to_string(ncols));
    }
    if (!std::isfinite(t.value) || t.value < 0.0) {
      throw DomainError("matrix entries must be finite and nonnegative");
    }
  }
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m(nrows, ncols);
  m.col_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::vector<std::size_t> counts(nrows, 0);
  for (std::size_t k = 0; k < triplets.size();) {
    const std::size_t r = triplets[k].row;
    const std::size_t c = triplets[k].col;
    double sum = 0.0;
    for (; k < triplets.size() && triplets[k].row == r && triplets[k].col == c; ++k) {
      sum += triplets[k].value;
    }
    if (sum > 0.0) {
      m.col_idx_.push_back(c);
      m.values_.push_back(sum);
      ++counts[r];
    }
  }
  for (std::size_t i = 0; i < nrows; ++i) m.row_ptr_[i + 1] = m.row_ptr_[i] + counts[i];
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<double>>& rows,
                                      std::size_t ncols) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ncols) throw ShapeError("ragged dense matrix");
    for (std::size_t j = 0; j < ncols; ++j) {
      if (rows[i][j] != 0.0) t.push_back({i, j, rows[i][j]});
    }
  }
  return from_triplets(rows.size(), ncols, std::move(t));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= nrows_ || j >= ncols_) throw ShapeError("index out of range");
  const auto cols = row_cols(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      out.push_back({i, col_idx_[k], values_[k]});
    }
  }
  return out;
}

void matvec_into(const SparseMatrix& a, std::span<const double> x, std::vector<double>& out) {
  if (x.size() != a.ncols()) {
    throw ShapeError("matvec: vector length " + std::to_string(x.size()) + " != ncols " +
                     std::to_string(a.ncols()));
  }
  out.assign(a.nrows(), 0.0);
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    double sum = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) sum += vals[k] * x[cols[k]];
    out[i] = sum;
  }
}

void matvec_transpose_into(const SparseMatrix& a, std::span<const double> y,
                           std::vector<double>& out) {
  if (y.size() != a.nrows()) {
    throw ShapeError("matvec_transpose: vector length " + std::to_string(y.size()) +
                     " != nrows " + std::to_string(a.nrows()));
  }
  out.assign(a.ncols(), 0.0);
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    const double yi = y[i];
    if (yi == 0.0) continue;
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) out[cols[k]] += vals[k] * yi;
  }
}

std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x) {
  std::vector<double> out;
  matvec_into(a, x, out);
  return out;
}

std::vector<double> matvec_transpose(const SparseMatrix& a, std::span<const double> y) {
  std::vector<double> out;
  matvec_transpose_into(a, y, out);
  return out;
}

std::vector<double> row_l1_norms(const SparseMatrix& a) {
  std::vector<double> out(a.nrows(), 0.0);
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    for (double v : a.row_values(i)) out[i] += v;
  }
  return out;
}

double inf_operator_norm(const SparseMatrix& a) {
  double best = 0.0;
  for (double s : row_l1_norms(a)) best = std::max(best, s);
  return best;
}

std::size_t width(const SparseMatrix& a) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < a.nrows(); ++i) best = std::max(best, a.row_nnz(i));
  return best;
}

}  // namespace mpc
