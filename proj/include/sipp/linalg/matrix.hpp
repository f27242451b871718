#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "sipp/error.hpp"
#include "sipp/linalg/scalar.hpp"

namespace sipp {

/// Zero-based (row, col) position.
struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  auto operator<=>(const Entry&) const = default;
};

/// Ordered list of distinct positions.
using IndexSet = std::vector<Entry>;

template <class T>
using Vector = std::vector<T>;

/// Dense row-major matrix over a field.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  Matrix(std::initializer_list<std::initializer_list<T>> grid) {
    rows_ = grid.size();
    cols_ = rows_ == 0 ? 0 : grid.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : grid) {
      if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) throw Error(ErrorKind::DimensionMismatch, "ragged row list");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> data() const noexcept { return data_; }
  std::span<T> data() noexcept { return data_; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Matrix s(rs.size(), cs.size());
    for (std::size_t a = 0; a < rs.size(); ++a)
      for (std::size_t b = 0; b < cs.size(); ++b) s(a, b) = (*this)(rs[a], cs[b]);
    return s;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {
template <class T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": shape mismatch");
}
}  // namespace detail

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_same_shape(a, b, "add");
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_same_shape(a, b, "subtract");
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a) {
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
  return c;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "multiply: inner dimensions differ");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      const T aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> operator*(const T& s, const Matrix<T>& a) {
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

template <class T>
Vector<T> operator*(const Matrix<T>& a, const Vector<T>& x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector: size mismatch");
  Vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

/// Entrywise product.
template <class T>
Matrix<T> hadamard(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_same_shape(a, b, "hadamard");
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) * b(i, j);
  return c;
}

/// Assembles a grid of blocks; block heights must agree along each block row
/// and widths along each block column.
template <class T>
Matrix<T> block(const std::vector<std::vector<Matrix<T>>>& blocks) {
  if (blocks.empty()) return {};
  const std::size_t grid_cols = blocks.front().size();
  std::vector<std::size_t> heights, widths(grid_cols);
  for (std::size_t bj = 0; bj < grid_cols; ++bj) widths[bj] = blocks.front()[bj].cols();
  for (const auto& brow : blocks) {
    if (brow.size() != grid_cols) throw Error(ErrorKind::DimensionMismatch, "block: ragged grid");
    const std::size_t h = brow.front().rows();
    for (std::size_t bj = 0; bj < grid_cols; ++bj) {
      if (brow[bj].rows() != h || brow[bj].cols() != widths[bj])
        throw Error(ErrorKind::DimensionMismatch, "block: nonconformal blocks");
    }
    heights.push_back(h);
  }
  std::size_t total_rows = 0, total_cols = 0;
  for (auto h : heights) total_rows += h;
  for (auto w : widths) total_cols += w;
  Matrix<T> out(total_rows, total_cols);
  std::size_t r0 = 0;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    std::size_t c0 = 0;
    for (std::size_t bj = 0; bj < grid_cols; ++bj) {
      const auto& b = blocks[bi][bj];
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
      c0 += widths[bj];
    }
    r0 += heights[bi];
  }
  return out;
}

template <class T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
  return block<T>({{a, Matrix<T>(a.rows(), b.cols())}, {Matrix<T>(b.rows(), a.cols()), b}});
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  return block<T>({{a, b}});
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  return block<T>({{a}, {b}});
}

/// Column-stacking position of (i, j) in an m-row matrix.
inline std::size_t vec_index(std::size_t i, std::size_t j, std::size_t m) { return j * m + i; }

/// Column-stacking: (a11, a21, ..., am1, a12, ...).
template <class T>
Vector<T> vec(const Matrix<T>& a) {
  Vector<T> v;
  v.reserve(a.rows() * a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) v.push_back(a(i, j));
  return v;
}

template <class T>
Matrix<T> unvec(const Vector<T>& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw Error(ErrorKind::DimensionMismatch, "unvec: length mismatch");
  Matrix<T> a(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) a(i, j) = v[vec_index(i, j, rows)];
  return a;
}

/// Entries of vec(a) at the positions of e, in e's order.
template <class T>
Vector<T> vec_restrict(const Matrix<T>& a, const IndexSet& e) {
  Vector<T> v;
  v.reserve(e.size());
  for (const auto& p : e) {
    if (p.row >= a.rows() || p.col >= a.cols()) throw Error(ErrorKind::InvalidInput, "vec_restrict: position out of bounds");
    v.push_back(a(p.row, p.col));
  }
  return v;
}

/// Nonzero positions in column-stacking order.
template <class T>
IndexSet support(const Matrix<T>& a, const NumericContext& ctx = {}) {
  IndexSet s;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (!FieldTraits<T>::is_zero(a(i, j), ctx)) s.push_back({i, j});
  return s;
}

/// Zero positions in column-stacking order.
template <class T>
IndexSet zero_positions(const Matrix<T>& a, const NumericContext& ctx = {}) {
  IndexSet s;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (FieldTraits<T>::is_zero(a(i, j), ctx)) s.push_back({i, j});
  return s;
}

template <class T>
bool is_nowhere_zero(const Matrix<T>& a, const NumericContext& ctx = {}) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (FieldTraits<T>::is_zero(a(i, j), ctx)) return false;
  return true;
}

template <class T>
bool is_nowhere_zero(const Vector<T>& v, const NumericContext& ctx = {}) {
  return std::none_of(v.begin(), v.end(), [&](const T& x) { return FieldTraits<T>::is_zero(x, ctx); });
}

template <class T>
bool is_zero_matrix(const Matrix<T>& a, const NumericContext& ctx = {}) {
  for (const auto& x : a.data())
    if (!FieldTraits<T>::is_zero(x, ctx)) return false;
  return true;
}

template <class T>
double max_abs(const Matrix<T>& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, FieldTraits<T>::magnitude(x));
  return m;
}

/// Max-norm distance, evaluated in binary64.
template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, FieldTraits<T>::magnitude(a(i, j) - b(i, j)));
  return m;
}

template <class T>
bool is_symmetric(const Matrix<T>& a, const NumericContext& ctx = {}) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (!FieldTraits<T>::is_zero(a(i, j) - a(j, i), ctx)) return false;
  return true;
}

template <class T>
bool is_skew_symmetric(const Matrix<T>& a, const NumericContext& ctx = {}) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (!FieldTraits<T>::is_zero(a(i, j) + a(j, i), ctx)) return false;
  return true;
}

/// ||Q Q^T - I||_max.
template <class T>
double orthogonality_residual(const Matrix<T>& q) {
  const Matrix<T> g = q * q.transpose();
  return max_abs_diff(g, Matrix<T>::identity(q.rows()));
}

template <class T>
bool is_row_orthogonal(const Matrix<T>& q, const NumericContext& ctx = {}) {
  if (q.rows() > q.cols()) return false;
  const double r = orthogonality_residual(q);
  return FieldTraits<T>::exact ? r == 0.0 && q * q.transpose() == Matrix<T>::identity(q.rows()) : r <= ctx.tau;
}

inline Matrix<double> to_double(const Matrix<Rational>& a) {
  Matrix<double> d(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d(i, j) = a(i, j).get_d();
  return d;
}

inline const Matrix<double>& to_double(const Matrix<double>& a) { return a; }

template <class T>
Matrix<T> from_ints(const std::vector<std::vector<long>>& rows) {
  Matrix<T> m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (rows[i].size() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "ragged row list");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = T(rows[i][j]);
  }
  return m;
}

}  // namespace sipp
