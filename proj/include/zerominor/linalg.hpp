#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "zerominor/gf2m.hpp"
#include "zerominor/matrix.hpp"

// Exact dense linear algebra over GF(2^m): row reduction with transform
// tracking, left kernels, determinants and minors, Schur complements, and
// the reduction of a kernel basis to [dense | reverse-identity] form.
//
// Elimination is exact, so pivoting just takes the first nonzero entry
// scanning down the column; this keeps every result deterministic.

namespace zm {

namespace detail {

// dst ^= factor * src over [from, cols)
inline void row_addmul(const Gf2m& F, fe* dst, const fe* src, fe factor, std::size_t from,
                       std::size_t cols) {
  if (factor == 0) return;
  for (std::size_t c = from; c < cols; ++c) dst[c] ^= F.mul(factor, src[c]);
}

inline void row_scale(const Gf2m& F, fe* row, fe factor, std::size_t from, std::size_t cols) {
  for (std::size_t c = from; c < cols; ++c)
    if (row[c]) row[c] = F.mul(factor, row[c]);
}

}  // namespace detail

struct RowReduceResult {
  Mat rref;       // T * input, in reduced row echelon form
  std::size_t rank = 0;
  Mat transform;  // invertible record of the row operations
};

inline RowReduceResult row_reduce(const Gf2m& F, const Mat& M) {
  Mat R = M;
  Mat T = Mat::identity(M.rows());
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < R.cols() && pivot_row < R.rows(); ++col) {
    std::size_t r = pivot_row;
    while (r < R.rows() && R(r, col) == 0) ++r;
    if (r == R.rows()) continue;
    R.swap_rows(r, pivot_row);
    T.swap_rows(r, pivot_row);
    fe pinv = F.inv(R(pivot_row, col));
    detail::row_scale(F, R.row_ptr(pivot_row), pinv, col, R.cols());
    detail::row_scale(F, T.row_ptr(pivot_row), pinv, 0, T.cols());
    for (std::size_t r2 = 0; r2 < R.rows(); ++r2) {
      if (r2 == pivot_row) continue;
      fe f = R(r2, col);
      if (f == 0) continue;
      detail::row_addmul(F, R.row_ptr(r2), R.row_ptr(pivot_row), f, col, R.cols());
      detail::row_addmul(F, T.row_ptr(r2), T.row_ptr(pivot_row), f, 0, T.cols());
    }
    ++pivot_row;
  }
  return {std::move(R), pivot_row, std::move(T)};
}

inline std::size_t rank_of(const Gf2m& F, const Mat& M) {
  // forward elimination only; cheaper than full row_reduce when the
  // transform is not needed
  Mat R = M;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < R.cols() && pivot_row < R.rows(); ++col) {
    std::size_t r = pivot_row;
    while (r < R.rows() && R(r, col) == 0) ++r;
    if (r == R.rows()) continue;
    R.swap_rows(r, pivot_row);
    fe pinv = F.inv(R(pivot_row, col));
    for (std::size_t r2 = pivot_row + 1; r2 < R.rows(); ++r2) {
      fe f = R(r2, col);
      if (f == 0) continue;
      detail::row_addmul(F, R.row_ptr(r2), R.row_ptr(pivot_row), F.mul(f, pinv), col, R.cols());
    }
    ++pivot_row;
  }
  return pivot_row;
}

// Basis of the left kernel {v : v M = 0}; one basis vector per row,
// rows(M) - rank(M) of them.  Forward elimination with a tracked transform:
// the transform rows paired with zero rows of the echelon form are the basis.
inline Mat left_kernel(const Gf2m& F, const Mat& M) {
  Mat R = M;
  Mat T = Mat::identity(M.rows());
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < R.cols() && pivot_row < R.rows(); ++col) {
    std::size_t r = pivot_row;
    while (r < R.rows() && R(r, col) == 0) ++r;
    if (r == R.rows()) continue;
    R.swap_rows(r, pivot_row);
    T.swap_rows(r, pivot_row);
    fe pinv = F.inv(R(pivot_row, col));
    for (std::size_t r2 = pivot_row + 1; r2 < R.rows(); ++r2) {
      fe f = R(r2, col);
      if (f == 0) continue;
      fe factor = F.mul(f, pinv);
      detail::row_addmul(F, R.row_ptr(r2), R.row_ptr(pivot_row), factor, col, R.cols());
      detail::row_addmul(F, T.row_ptr(r2), T.row_ptr(pivot_row), factor, 0, T.cols());
    }
    ++pivot_row;
  }
  Mat basis(M.rows() - pivot_row, M.rows());
  for (std::size_t i = pivot_row; i < M.rows(); ++i)
    for (std::size_t c = 0; c < M.rows(); ++c) basis(i - pivot_row, c) = T(i, c);
  return basis;
}

inline fe determinant(const Gf2m& F, const Mat& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
  Mat W = A;
  fe det = 1;
  for (std::size_t col = 0; col < W.cols(); ++col) {
    std::size_t r = col;
    while (r < W.rows() && W(r, col) == 0) ++r;
    if (r == W.rows()) return 0;
    W.swap_rows(r, col);  // row swap has no sign in characteristic 2
    fe pivot = W(col, col);
    det = F.mul(det, pivot);
    fe pinv = F.inv(pivot);
    for (std::size_t r2 = col + 1; r2 < W.rows(); ++r2) {
      fe f = W(r2, col);
      if (f == 0) continue;
      detail::row_addmul(F, W.row_ptr(r2), W.row_ptr(col), F.mul(f, pinv), col, W.cols());
    }
  }
  return det;
}

// Determinant of the sub-matrix selected by idx, host ordering preserved.
inline fe minor_det(const Gf2m& F, const Mat& A, const MinorIndex& idx) {
  idx.validate(A.rows(), A.cols());
  if (idx.size() == 0) return 1;
  if (idx.size() == 1) return A(idx.rows[0], idx.cols[0]);
  if (idx.size() == 2) {
    fe a = A(idx.rows[0], idx.cols[0]), b = A(idx.rows[0], idx.cols[1]);
    fe c = A(idx.rows[1], idx.cols[0]), d = A(idx.rows[1], idx.cols[1]);
    return F.add(F.mul(a, d), F.mul(b, c));
  }
  return determinant(F, A.extract(idx.rows, idx.cols));
}

inline std::vector<std::size_t> complement_indices(const std::vector<std::size_t>& subset,
                                                   std::size_t n) {
  std::vector<std::size_t> out;
  out.reserve(n - subset.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (k < subset.size() && subset[k] == i) {
      ++k;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

// Inverse of a small square matrix; nullopt when singular.
inline std::optional<Mat> try_invert(const Gf2m& F, const Mat& E) {
  if (E.rows() != E.cols()) throw std::invalid_argument("inverting non-square matrix");
  std::size_t n = E.rows();
  Mat W = hcat(E, Mat::identity(n));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t r = col;
    while (r < n && W(r, col) == 0) ++r;
    if (r == n) return std::nullopt;
    W.swap_rows(r, col);
    fe pinv = F.inv(W(col, col));
    detail::row_scale(F, W.row_ptr(col), pinv, col, 2 * n);
    for (std::size_t r2 = 0; r2 < n; ++r2) {
      if (r2 == col) continue;
      fe f = W(r2, col);
      if (f == 0) continue;
      detail::row_addmul(F, W.row_ptr(r2), W.row_ptr(col), f, col, 2 * n);
    }
  }
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = W(i, n + j);
  return inv;
}

// Schur complement of the block E = A[block.rows | block.cols]:
// S = H + G E^-1 F' over the complement rows x complement cols.
// nullopt when E is singular; for zero-minor searches a singular block is
// itself a hit, so callers check the block first.
inline std::optional<Mat> schur_complement(const Gf2m& F, const Mat& A, const MinorIndex& block) {
  block.validate(A.rows(), A.cols());
  auto rows_c = complement_indices(block.rows, A.rows());
  auto cols_c = complement_indices(block.cols, A.cols());
  if (block.size() == 0) return A.extract(rows_c, cols_c);  // the whole matrix
  Mat E = A.extract(block.rows, block.cols);
  auto Einv = try_invert(F, E);
  if (!Einv) return std::nullopt;
  Mat Fblk = A.extract(block.rows, cols_c);   // block rows x complement cols
  Mat G = A.extract(rows_c, block.cols);      // complement rows x block cols
  Mat S = A.extract(rows_c, cols_c);
  Mat X = mat_mul(F, *Einv, Fblk);
  for (std::size_t i = 0; i < rows_c.size(); ++i)
    for (std::size_t k = 0; k < block.size(); ++k) {
      fe g = G(i, k);
      if (g == 0) continue;
      for (std::size_t j = 0; j < cols_c.size(); ++j) S(i, j) ^= F.mul(g, X(k, j));
    }
  return S;
}

// Row-reduces an l x 2l full-rank kernel basis K so its right half becomes
// the reverse identity, and returns the left half (the dense part).
// nullopt when the right l x l block is singular; the caller resamples.
inline std::optional<Mat> reduce_to_reverse_identity(const Gf2m& F, const Mat& K) {
  std::size_t l = K.rows();
  if (K.cols() != 2 * l) throw std::invalid_argument("kernel basis must be l x 2l");
  Mat W = K;
  // Gauss-Jordan on the right block, turning it into the identity.
  for (std::size_t j = 0; j < l; ++j) {
    std::size_t col = l + j;
    std::size_t r = j;
    while (r < l && W(r, col) == 0) ++r;
    if (r == l) return std::nullopt;
    W.swap_rows(r, j);
    fe pinv = F.inv(W(j, col));
    detail::row_scale(F, W.row_ptr(j), pinv, 0, 2 * l);
    for (std::size_t r2 = 0; r2 < l; ++r2) {
      if (r2 == j) continue;
      fe f = W(r2, col);
      if (f == 0) continue;
      detail::row_addmul(F, W.row_ptr(r2), W.row_ptr(j), f, 0, 2 * l);
    }
  }
  // Reversing the row order turns the identity into the reverse identity.
  Mat dense(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t c = 0; c < l; ++c) dense(i, c) = W(l - 1 - i, c);
  return dense;
}

}  // namespace zm
