#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isotropy/errors.hpp"
#include "isotropy/exact_scalar.hpp"

namespace isotropy {

/// Dense row-major matrix over Q(i)[sqrt 2]. Empty shapes (0 x n) are legal.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<ExactScalar> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw InputError("matrix entry count " + std::to_string(data_.size()) + " does not match " +
                       std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  ExactMatrix(std::initializer_list<std::initializer_list<ExactScalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw InputError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = ExactScalar(1);
    return m;
  }
  static ExactMatrix zero(std::size_t rows, std::size_t cols) { return ExactMatrix(rows, cols); }
  static ExactMatrix diagonal(std::span<const ExactScalar> values) {
    ExactMatrix m(values.size(), values.size());
    for (std::size_t k = 0; k < values.size(); ++k) m(k, k) = values[k];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }
  const std::vector<ExactScalar>& entries() const { return data_; }

  ExactScalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const ExactScalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if ((*this)(r, c) != ExactScalar(r == c ? 1 : 0)) return false;
    return true;
  }
  bool is_symmetric() const { return is_square() && *this == transpose(); }
  bool is_skew() const { return is_square() && *this == -transpose(); }

  ExactMatrix transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// Entrywise complex conjugate.
  ExactMatrix conj() const {
    ExactMatrix t(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = data_[k].conj();
    return t;
  }

  ExactMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw InputError("block out of range");
    ExactMatrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const ExactMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw InputError("block out of range");
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  ExactMatrix operator-() const {
    ExactMatrix t(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = -data_[k];
    return t;
  }

  ExactMatrix& operator+=(const ExactMatrix& o) {
    require_same_shape(o, "addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ExactMatrix& operator-=(const ExactMatrix& o) {
    require_same_shape(o, "subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ExactMatrix& operator*=(const ExactScalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend ExactMatrix operator+(ExactMatrix x, const ExactMatrix& y) { return x += y; }
  friend ExactMatrix operator-(ExactMatrix x, const ExactMatrix& y) { return x -= y; }
  friend ExactMatrix operator*(ExactMatrix x, const ExactScalar& s) { return x *= s; }
  friend ExactMatrix operator*(const ExactScalar& s, ExactMatrix x) { return x *= s; }

  friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.cols_ != y.rows_)
      throw InputError("dimension mismatch in product: " + x.shape() + " * " + y.shape());
    ExactMatrix p(x.rows_, y.cols_);
    for (std::size_t r = 0; r < x.rows_; ++r)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const ExactScalar& xrk = x(r, k);
        if (xrk.is_zero()) continue;
        for (std::size_t c = 0; c < y.cols_; ++c) {
          const ExactScalar& ykc = y(k, c);
          if (!ykc.is_zero()) p(r, c) += xrk * ykc;
        }
      }
    return p;
  }

  friend bool operator==(const ExactMatrix& x, const ExactMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }
  friend bool operator!=(const ExactMatrix& x, const ExactMatrix& y) { return !(x == y); }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const ExactMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw InputError(std::string("dimension mismatch in ") + op + ": " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExactScalar> data_;
};

inline std::ostream& operator<<(std::ostream& os, const ExactMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "[";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
    os << "]\n";
  }
  return os;
}

inline ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix s(a.rows() + b.rows(), a.cols() + b.cols());
  s.set_block(0, 0, a);
  s.set_block(a.rows(), a.cols(), b);
  return s;
}

inline ExactMatrix direct_sum(std::span<const ExactMatrix> parts) {
  std::size_t rows = 0, cols = 0;
  for (const auto& p : parts) {
    rows += p.rows();
    cols += p.cols();
  }
  ExactMatrix s(rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& p : parts) {
    s.set_block(r, c, p);
    r += p.rows();
    c += p.cols();
  }
  return s;
}

/// Assemble a grid of blocks. Rows of the grid must agree on block heights,
/// columns on block widths.
inline ExactMatrix block_assemble(const std::vector<std::vector<ExactMatrix>>& grid) {
  if (grid.empty()) return {};
  const std::size_t grid_cols = grid.front().size();
  std::vector<std::size_t> heights(grid.size()), widths(grid_cols);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].size() != grid_cols) throw InputError("ragged block grid");
    heights[i] = grid[i].empty() ? 0 : grid[i][0].rows();
    for (std::size_t j = 0; j < grid_cols; ++j) {
      if (grid[i][j].rows() != heights[i]) throw InputError("inconsistent block heights in grid row " + std::to_string(i));
      if (i == 0) widths[j] = grid[0][j].cols();
      if (grid[i][j].cols() != widths[j]) throw InputError("inconsistent block widths in grid column " + std::to_string(j));
    }
  }
  std::size_t rows = 0, cols = 0;
  for (auto h : heights) rows += h;
  for (auto w : widths) cols += w;
  ExactMatrix m(rows, cols);
  std::size_t r = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < grid_cols; ++j) {
      m.set_block(r, c, grid[i][j]);
      c += widths[j];
    }
    r += heights[i];
  }
  return m;
}

inline ExactMatrix power(const ExactMatrix& a, std::size_t k) {
  if (!a.is_square()) throw InputError("power of non-square matrix");
  ExactMatrix result = ExactMatrix::identity(a.rows());
  for (std::size_t i = 0; i < k; ++i) result = result * a;
  return result;
}

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

/// Reduced row echelon form with the first nonzero entry of each column as
/// pivot (exact zero tests; no magnitude heuristics exist here).
struct RowEchelon {
  ExactMatrix reduced;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank() const { return pivot_columns.size(); }
};

inline RowEchelon row_reduce(ExactMatrix m) {
  RowEchelon out;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t found = rows;
    for (std::size_t r = pivot_row; r < rows; ++r)
      if (!m(r, col).is_zero()) {
        found = r;
        break;
      }
    if (found == rows) continue;
    if (found != pivot_row)
      for (std::size_t c = col; c < cols; ++c) std::swap(m(found, c), m(pivot_row, c));
    ExactScalar inv = m(pivot_row, col).inverse();
    for (std::size_t c = col; c < cols; ++c)
      if (!m(pivot_row, c).is_zero()) m(pivot_row, c) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || m(r, col).is_zero()) continue;
      ExactScalar factor = m(r, col);
      for (std::size_t c = col; c < cols; ++c)
        if (!m(pivot_row, c).is_zero()) m(r, c) -= factor * m(pivot_row, c);
    }
    out.pivot_columns.push_back(col);
    ++pivot_row;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const ExactMatrix& a) { return row_reduce(a).rank(); }

struct Nullspace {
  std::vector<ExactMatrix> basis;  ///< column vectors, cols x 1
  std::size_t nullity = 0;
};

inline Nullspace nullspace(const ExactMatrix& a) {
  RowEchelon rre = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : rre.pivot_columns) is_pivot[c] = true;
  Nullspace ns;
  for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    ExactMatrix v(a.cols(), 1);
    v(free_col, 0) = ExactScalar(1);
    for (std::size_t i = 0; i < rre.pivot_columns.size(); ++i)
      v(rre.pivot_columns[i], 0) = -rre.reduced(i, free_col);
    ns.basis.push_back(std::move(v));
  }
  ns.nullity = ns.basis.size();
  return ns;
}

inline ExactMatrix inverse(const ExactMatrix& a) {
  if (!a.is_square()) throw InputError("inverse of non-square matrix " + a.shape());
  const std::size_t n = a.rows();
  ExactMatrix aug(n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, ExactMatrix::identity(n));
  RowEchelon rre = row_reduce(std::move(aug));
  if (rre.rank() < n || (n > 0 && rre.pivot_columns[n - 1] != n - 1))
    throw SingularMatrix("matrix is singular");
  return rre.reduced.block(0, n, n, n);
}

inline bool is_nonsingular(const ExactMatrix& a) { return a.is_square() && rank(a) == a.rows(); }

/// Row-major vectorisation index helpers for linear operators on matrices.
inline ExactMatrix vectorize(const ExactMatrix& x) {
  ExactMatrix v(x.rows() * x.cols(), 1);
  for (std::size_t k = 0; k < x.entries().size(); ++k) v(k, 0) = x.entries()[k];
  return v;
}

/// Matrix of X -> S X - X S acting on row-major vec(X).
inline ExactMatrix commutator_operator(const ExactMatrix& s) {
  if (!s.is_square()) throw InputError("commutator operator needs a square matrix");
  const std::size_t n = s.rows();
  ExactMatrix op(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      // (S X)_{ij} = sum_k S_ik X_kj ; (X S)_{ij} = sum_k X_ik S_kj
      for (std::size_t k = 0; k < n; ++k) {
        if (!s(i, k).is_zero()) op(row, k * n + j) += s(i, k);
        if (!s(k, j).is_zero()) op(row, i * n + k) -= s(k, j);
      }
    }
  return op;
}

/// Exact Cayley sampler for the complex orthogonal group:
/// Q = diag(signs) (I - Z)(I + Z)^{-1}, Z skew-symmetric.
inline ExactMatrix cayley_orthogonal(const ExactMatrix& z, std::span<const int> signs) {
  if (!z.is_skew()) throw InputError("cayley_orthogonal requires a skew-symmetric matrix");
  const std::size_t n = z.rows();
  if (!signs.empty() && signs.size() != n) throw InputError("sign list length does not match matrix size");
  ExactMatrix id = ExactMatrix::identity(n);
  ExactMatrix inv;
  try {
    inv = inverse(id + z);
  } catch (const SingularMatrix&) {
    throw SingularMatrix("I + Z is singular; re-sample the skew-symmetric matrix Z");
  }
  ExactMatrix q = (id - z) * inv;
  for (std::size_t r = 0; r < signs.size(); ++r) {
    if (signs[r] != 1 && signs[r] != -1) throw InputError("signs must be +1 or -1");
    if (signs[r] == -1)
      for (std::size_t c = 0; c < n; ++c) q(r, c) = -q(r, c);
  }
  if (!(q.transpose() * q).is_identity()) throw IntegrityError("Cayley transform produced a non-orthogonal matrix");
  return q;
}

inline ExactMatrix cayley_orthogonal(const ExactMatrix& z) { return cayley_orthogonal(z, std::span<const int>{}); }

inline bool is_orthogonal(const ExactMatrix& q) { return q.is_square() && (q.transpose() * q).is_identity(); }

}  // namespace isotropy
