#include "sipp/signpat/sign_pattern.hpp"

namespace sipp {

SignPattern::SignPattern(std::initializer_list<std::initializer_list<int>> grid) {
  rows_ = grid.size();
  cols_ = rows_ == 0 ? 0 : grid.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : grid) {
    if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged sign pattern literal");
    for (int x : row) {
      if (x < -1 || x > 1) throw Error(ErrorKind::InvalidInput, "sign pattern entries must be -1, 0 or 1");
      data_.push_back(static_cast<std::int8_t>(x));
    }
  }
}

SignPattern SignPattern::from_rows(const std::vector<std::vector<int>>& rows) {
  SignPattern s(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < s.rows_; ++i) {
    if (rows[i].size() != s.cols_) throw Error(ErrorKind::DimensionMismatch, "ragged sign pattern rows");
    for (std::size_t j = 0; j < s.cols_; ++j) s.set(i, j, rows[i][j]);
  }
  return s;
}

void SignPattern::set(std::size_t i, std::size_t j, int s) {
  if (s < -1 || s > 1) throw Error(ErrorKind::InvalidInput, "sign pattern entries must be -1, 0 or 1");
  data_[i * cols_ + j] = static_cast<std::int8_t>(s);
}

SignPattern SignPattern::transpose() const {
  SignPattern t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, (*this)(i, j));
  return t;
}

SignPattern SignPattern::negated() const {
  SignPattern t = *this;
  for (auto& x : t.data_) x = static_cast<std::int8_t>(-x);
  return t;
}

std::size_t SignPattern::zero_count() const {
  std::size_t z = 0;
  for (auto x : data_) z += (x == 0);
  return z;
}

std::string SignPattern::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const int v = (*this)(i, j);
      out += v > 0 ? '+' : (v < 0 ? '-' : '0');
    }
    if (i + 1 < rows_) out += '\n';
  }
  return out;
}

SignPattern super_pattern(const SignPattern& s, const SignPattern& r) {
  if (s.rows() != r.rows() || s.cols() != r.cols())
    throw Error(ErrorKind::DimensionMismatch, "super_pattern: shape mismatch");
  SignPattern out = s;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (s(i, j) == 0) out.set(i, j, r(i, j));
  return out;
}

bool is_super_pattern(const SignPattern& t, const SignPattern& s) {
  if (s.rows() != t.rows() || s.cols() != t.cols())
    throw Error(ErrorKind::DimensionMismatch, "is_super_pattern: shape mismatch");
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (s(i, j) != 0 && t(i, j) != s(i, j)) return false;
  return true;
}

namespace {

// Lines are rows of `s`; checks nonzero lines and pairwise sign products.
std::string line_obstruction(const SignPattern& s, const char* what) {
  for (std::size_t i = 0; i < s.rows(); ++i) {
    bool nonzero = false;
    for (std::size_t j = 0; j < s.cols(); ++j) nonzero |= s(i, j) != 0;
    if (!nonzero) return std::string(what) + " " + std::to_string(i + 1) + " is zero";
  }
  for (std::size_t a = 0; a < s.rows(); ++a) {
    for (std::size_t b = a + 1; b < s.rows(); ++b) {
      bool plus = false, minus = false;
      for (std::size_t j = 0; j < s.cols(); ++j) {
        const int p = s(a, j) * s(b, j);
        plus |= p > 0;
        minus |= p < 0;
      }
      if (plus != minus)
        return std::string(what) + "s " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
               " have sign products of a single sign";
    }
  }
  return {};
}

}  // namespace

std::string row_orthogonality_obstruction(const SignPattern& s) { return line_obstruction(s, "row"); }

std::string potential_orthogonality_obstruction(const SignPattern& s) {
  auto rows = line_obstruction(s, "row");
  if (!rows.empty() || !s.is_square()) return rows;
  return line_obstruction(s.transpose(), "column");
}

bool potentially_orthogonal(const SignPattern& s) {
  return line_obstruction(s, "row").empty() && line_obstruction(s.transpose(), "column").empty();
}

}  // namespace sipp
