#pragma once

// Exact integer matrices with Hermite and Smith normal forms.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "report.hpp"

namespace cubelab {

using Int = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Row-major nested list; an empty outer list gives 0×0.
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols_if_empty = 0) {
    std::size_t c = rows.empty() ? cols_if_empty : rows[0].size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw InputError("matrix: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  // Columns given as vectors of length `rows`.
  static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw InputError("matrix: column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Int> column(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<std::vector<Int>> columns() const {
    std::vector<std::vector<Int>> c(cols_);
    for (std::size_t j = 0; j < cols_; ++j) c[j] = column(j);
    return c;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& b) const {
    if (cols_ != b.rows_) throw InputError("matrix product: dimension mismatch");
    IntMatrix c(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }

  std::vector<Int> operator*(const std::vector<Int>& v) const {
    if (cols_ != v.size()) throw InputError("matrix-vector product: dimension mismatch");
    std::vector<Int> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
    return out;
  }

  IntMatrix operator-() const {
    IntMatrix m(*this);
    for (auto& x : m.a_) x = -x;
    return m;
  }

  IntMatrix operator+(const IntMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw InputError("matrix sum: dimension mismatch");
    IntMatrix m(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += b.a_[i];
    return m;
  }

  // [this | b]
  IntMatrix hcat(const IntMatrix& b) const {
    if (rows_ != b.rows_) throw InputError("hcat: row mismatch");
    IntMatrix m(rows_, cols_ + b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, cols_ + j) = b(i, j);
    }
    return m;
  }

  // [this ; b]
  IntMatrix vcat(const IntMatrix& b) const {
    if (cols_ != b.cols_) throw InputError("vcat: column mismatch");
    IntMatrix m(rows_ + b.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(rows_ + i, j) = b(i, j);
    return m;
  }

  static IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
    return m;
  }

  IntMatrix slice_rows(std::size_t from, std::size_t to) const {
    IntMatrix m(to - from, cols_);
    for (std::size_t i = from; i < to; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - from, j) = (*this)(i, j);
    return m;
  }

  IntMatrix slice_cols(std::size_t from, std::size_t to) const {
    IntMatrix m(rows_, to - from);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = from; j < to; ++j) m(i, j - from) = (*this)(i, j);
    return m;
  }

  bool operator==(const IntMatrix& b) const { return rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_; }
  bool operator!=(const IntMatrix& b) const { return !(*this == b); }

  std::vector<std::vector<std::string>> to_strings() const {
    std::vector<std::vector<std::string>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).get_str());
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct HnfResult {
  IntMatrix H, U;  // H = M·U
  std::size_t rank = 0;
};

// Column Hermite normal form: pivot rows strictly increase, pivots positive,
// entries left of a pivot reduced into [0, pivot), zero columns trail.
inline HnfResult hnf(const IntMatrix& M) {
  std::size_t m = M.rows(), n = M.cols();
  std::vector<std::vector<Int>> A = M.columns();
  std::vector<std::vector<Int>> U = IntMatrix::identity(n).columns();
  auto axpy = [](std::vector<Int>& y, const Int& q, const std::vector<Int>& x) {
    if (q == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= q * x[i];
  };
  std::size_t r = 0;
  for (std::size_t row = 0; row < m && r < n; ++row) {
    while (true) {
      std::size_t best = n;
      for (std::size_t j = r; j < n; ++j)
        if (A[j][row] != 0 && (best == n || abs(A[j][row]) < abs(A[best][row]))) best = j;
      if (best == n) break;
      std::swap(A[r], A[best]);
      std::swap(U[r], U[best]);
      bool clean = true;
      for (std::size_t j = r + 1; j < n; ++j) {
        if (A[j][row] == 0) continue;
        Int q = floor_div(A[j][row], A[r][row]);
        axpy(A[j], q, A[r]);
        axpy(U[j], q, U[r]);
        if (A[j][row] != 0) clean = false;
      }
      if (clean) break;
    }
    if (A[r][row] == 0) continue;
    if (A[r][row] < 0) {
      for (auto& x : A[r]) x = -x;
      for (auto& x : U[r]) x = -x;
    }
    for (std::size_t j = 0; j < r; ++j) {
      Int q = floor_div(A[j][row], A[r][row]);
      axpy(A[j], q, A[r]);
      axpy(U[j], q, U[r]);
    }
    ++r;
  }
  return HnfResult{IntMatrix::from_columns(m, A), IntMatrix::from_columns(n, U), r};
}

struct SnfResult {
  IntMatrix D, U, V;  // D = U·M·V
};

inline SnfResult snf(const IntMatrix& M) {
  std::size_t m = M.rows(), n = M.cols();
  IntMatrix A = M, U = IntMatrix::identity(m), V = IntMatrix::identity(n);
  auto row_op = [&](std::size_t dst, const Int& q, std::size_t src) {  // row dst -= q·row src
    for (std::size_t j = 0; j < n; ++j) A(dst, j) -= q * A(src, j);
    for (std::size_t j = 0; j < m; ++j) U(dst, j) -= q * U(src, j);
  };
  auto col_op = [&](std::size_t dst, const Int& q, std::size_t src) {  // col dst -= q·col src
    for (std::size_t i = 0; i < m; ++i) A(i, dst) -= q * A(i, src);
    for (std::size_t i = 0; i < n; ++i) V(i, dst) -= q * V(i, src);
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(A(a, j), A(b, j));
    for (std::size_t j = 0; j < m; ++j) std::swap(U(a, j), U(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(A(i, a), A(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(V(i, a), V(i, b));
  };
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A(i, j) != 0 && (bi == m || abs(A(i, j)) < abs(A(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) break;
      swap_rows(t, bi);
      swap_cols(t, bj);
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i)
        if (A(i, t) != 0) {
          row_op(i, floor_div(A(i, t), A(t, t)), t);
          if (A(i, t) != 0) dirty = true;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (A(t, j) != 0) {
          col_op(j, floor_div(A(t, j), A(t, t)), t);
          if (A(t, j) != 0) dirty = true;
        }
      if (dirty) continue;
      // divisibility: fold an offending row into row t and retry
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_op(t, Int(-1), bad);
    }
    if (A(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) A(t, j) = -A(t, j);
      for (std::size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
    }
  }
  return SnfResult{A, U, V};
}

// Basis of {x : M·x = 0} (columns).
inline IntMatrix kernel_basis(const IntMatrix& M) {
  HnfResult h = hnf(M);
  return h.U.slice_cols(h.rank, M.cols());
}

// First (non-zero) columns of the HNF.
inline IntMatrix hnf_basis(const IntMatrix& M) {
  HnfResult h = hnf(M);
  return h.H.slice_cols(0, h.rank);
}

// Solve B·y = v for a full-column-rank HNF basis B; nullopt if v ∉ span_ℤ(B).
inline bool solve_hnf(const IntMatrix& B, const std::vector<Int>& v, std::vector<Int>* y = nullptr) {
  std::vector<Int> rest = v;
  std::vector<Int> coef(B.cols(), 0);
  std::size_t row = 0;
  for (std::size_t j = 0; j < B.cols(); ++j) {
    while (row < B.rows() && B(row, j) == 0) {
      if (rest[row] != 0) return false;
      ++row;
    }
    if (row == B.rows()) break;
    if (rest[row] % B(row, j) != 0) return false;
    coef[j] = rest[row] / B(row, j);
    for (std::size_t i = row; i < B.rows(); ++i) rest[i] -= coef[j] * B(i, j);
    ++row;
  }
  for (std::size_t i = 0; i < rest.size(); ++i)
    if (rest[i] != 0) return false;
  if (y) *y = std::move(coef);
  return true;
}

}  // namespace cubelab
