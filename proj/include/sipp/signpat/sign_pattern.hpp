#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sipp/linalg/matrix.hpp"

namespace sipp {

/// m x n grid over {+1, 0, -1}.
class SignPattern {
 public:
  SignPattern() = default;
  SignPattern(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  SignPattern(std::initializer_list<std::initializer_list<int>> grid);

  static SignPattern from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, int s);

  const std::vector<std::int8_t>& raw() const noexcept { return data_; }

  SignPattern transpose() const;
  SignPattern negated() const;
  std::size_t zero_count() const;
  bool is_nowhere_zero() const { return zero_count() == 0; }

  /// Rows of '+', '-', '0' separated by newlines.
  std::string to_text() const;

  template <class T>
  Matrix<T> to_matrix() const {
    Matrix<T> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = T((*this)(i, j));
    return m;
  }

  friend bool operator==(const SignPattern&, const SignPattern&) = default;
  friend bool operator<(const SignPattern& a, const SignPattern& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int8_t> data_;
};

/// Entrywise sign; binary64 entries with |x| <= tau count as zero.
template <class T>
SignPattern sign_of(const Matrix<T>& m, const NumericContext& ctx = {}) {
  SignPattern s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s.set(i, j, FieldTraits<T>::sign(m(i, j), ctx));
  return s;
}

/// s_ij where s_ij != 0, else r_ij.
SignPattern super_pattern(const SignPattern& s, const SignPattern& r);

/// True iff t agrees with s on the support of s.
bool is_super_pattern(const SignPattern& t, const SignPattern& s);

/// Rows nonzero and every pair of rows has entrywise sign products that
/// contain both +1 and -1 or are all 0; the same for columns.
bool potentially_orthogonal(const SignPattern& s);

/// The row half of potentially_orthogonal, which is the necessary condition
/// for row orthogonality when m < n. Returns a description of the first
/// failure, or an empty string.
std::string row_orthogonality_obstruction(const SignPattern& s);

/// Row and column conditions together (columns only for square patterns).
std::string potential_orthogonality_obstruction(const SignPattern& s);

}  // namespace sipp
