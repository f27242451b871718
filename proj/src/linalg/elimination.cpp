#include "sipp/linalg/elimination.hpp"

#include <cmath>
#include <numeric>

#include "sipp/linalg/eigen_sym.hpp"

namespace sipp {

namespace {

// Pivot choice differs by field: any nonzero entry is exact for rationals,
// the largest magnitude above threshold for binary64.
template <class T>
std::optional<std::size_t> choose_pivot(const Matrix<T>& a, std::size_t col, std::size_t from, double threshold) {
  if constexpr (FieldTraits<T>::exact) {
    (void)threshold;
    for (std::size_t r = from; r < a.rows(); ++r)
      if (sgn(a(r, col)) != 0) return r;
    return std::nullopt;
  } else {
    std::optional<std::size_t> best;
    double best_mag = threshold;
    for (std::size_t r = from; r < a.rows(); ++r) {
      const double mag = std::fabs(a(r, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    return best;
  }
}

template <class T>
void swap_rows(Matrix<T>& a, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r1, j), a(r2, j));
}

}  // namespace

template <class T>
RrefResult<T> rref(const Matrix<T>& m, const NumericContext& ctx) {
  RrefResult<T> out{m, {}, 0};
  Matrix<T>& a = out.reduced;
  const double threshold = ctx.tau * max_abs(m);
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    const auto pivot = choose_pivot(a, col, row, threshold);
    if (!pivot) {
      if constexpr (!FieldTraits<T>::exact) {
        for (std::size_t r = row; r < a.rows(); ++r) a(r, col) = 0.0;
      }
      continue;
    }
    swap_rows(a, *pivot, row);
    const T inv = T(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    a(row, col) = T(1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      const T factor = a(r, col);
      if (factor == 0) continue;
      for (std::size_t j = col; j < a.cols(); ++j) a(r, j) -= factor * a(row, j);
      a(r, col) = T(0);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  if constexpr (!FieldTraits<T>::exact) {
    for (std::size_t r = row; r < a.rows(); ++r)
      for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = 0.0;
  }
  out.rank = out.pivot_cols.size();
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m, const NumericContext& ctx) {
  return rref(m, ctx).rank;
}

template <class T>
std::vector<Vector<T>> nullspace(const Matrix<T>& m, const NumericContext& ctx) {
  const auto r = rref(m, ctx);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  std::vector<Vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) v[r.pivot_cols[k]] = -r.reduced(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
std::vector<Vector<T>> left_nullspace(const Matrix<T>& m, const NumericContext& ctx) {
  return nullspace(m.transpose(), ctx);
}

template <class T>
std::optional<Vector<T>> solve(const Matrix<T>& a, const Vector<T>& b, const NumericContext& ctx) {
  if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "solve: right-hand side length mismatch");
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto r = rref(aug, ctx);
  if (!r.pivot_cols.empty() && r.pivot_cols.back() == a.cols()) return std::nullopt;
  Vector<T> x(a.cols(), T(0));
  for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) x[r.pivot_cols[k]] = r.reduced(k, a.cols());
  if constexpr (!FieldTraits<T>::exact) {
    // The augmented threshold can hide a small inconsistency; check directly.
    const Vector<T> ax = a * x;
    double scale = std::max(max_abs(a), 1.0);
    for (auto v : b) scale = std::max(scale, std::fabs(v));
    for (std::size_t i = 0; i < ax.size(); ++i)
      if (std::fabs(ax[i] - b[i]) > std::sqrt(ctx.tau) * scale) return std::nullopt;
  }
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a, const NumericContext& ctx) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse: matrix must be square");
  const std::size_t n = a.rows();
  const auto r = rref(hstack(a, Matrix<T>::identity(n)), ctx);
  if (r.rank < n || r.pivot_cols[n - 1] != n - 1) throw Error(ErrorKind::Singular, "inverse: matrix is singular");
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

template <class T>
T determinant(const Matrix<T>& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant: matrix must be square");
  Matrix<T> a = m;
  const std::size_t n = a.rows();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    const auto pivot = choose_pivot(a, col, col, 0.0);
    if (!pivot) return T(0);
    if (*pivot != col) {
      swap_rows(a, *pivot, col);
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const T factor = a(r, col) / a(col, col);
      if (factor == 0) continue;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
    }
  }
  return det;
}

Vector<double> least_squares_min_norm(const Matrix<double>& a, const Vector<double>& b, const NumericContext& ctx) {
  if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "least_squares_min_norm: length mismatch");
  // x = A^T (A A^T)^+ b through the eigendecomposition of the Gram matrix.
  const Matrix<double> gram = a * a.transpose();
  const auto eig = symmetric_eigen(gram);
  const double top = eig.values.empty() ? 0.0 : std::fabs(eig.values.back());
  const double cutoff = std::max(top, 1e-300) * ctx.tau * ctx.tau * 1e4;
  Vector<double> y(a.rows(), 0.0);
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] <= cutoff) continue;
    double proj = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) proj += eig.vectors(i, k) * b[i];
    proj /= eig.values[k];
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] += proj * eig.vectors(i, k);
  }
  return a.transpose() * y;
}

template <class T>
Vector<T> canonical_kernel_vector(const std::vector<Vector<T>>& basis, const NumericContext& ctx) {
  if (basis.empty()) throw Error(ErrorKind::InvalidInput, "canonical_kernel_vector: empty basis");
  auto support_of = [&](const Vector<T>& v) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!FieldTraits<T>::is_zero(v[i], ctx)) s.push_back(i);
    return s;
  };
  std::size_t best = 0;
  auto best_support = support_of(basis[0]);
  for (std::size_t k = 1; k < basis.size(); ++k) {
    auto s = support_of(basis[k]);
    if (s < best_support) {
      best_support = std::move(s);
      best = k;
    }
  }
  Vector<T> v = basis[best];
  if constexpr (FieldTraits<T>::exact) {
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& x : v) {
      if (sgn(x) == 0) continue;
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    }
    for (auto& x : v) x *= den_lcm;
    for (const auto& x : v) {
      if (sgn(x) == 0) continue;
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num_mpz_t());
    }
    if (num_gcd != 0)
      for (auto& x : v) x /= Rational(num_gcd);
  } else {
    double m = 0.0;
    for (auto x : v) m = std::max(m, std::fabs(x));
    if (m > 0)
      for (auto& x : v) x /= m;
  }
  for (const auto& x : v) {
    if (FieldTraits<T>::is_zero(x, ctx)) continue;
    if (FieldTraits<T>::sign(x, ctx) < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

#define SIPP_INSTANTIATE_ELIMINATION(T)                                                                  \
  template RrefResult<T> rref<T>(const Matrix<T>&, const NumericContext&);                              \
  template std::size_t rank<T>(const Matrix<T>&, const NumericContext&);                                \
  template std::vector<Vector<T>> nullspace<T>(const Matrix<T>&, const NumericContext&);                \
  template std::vector<Vector<T>> left_nullspace<T>(const Matrix<T>&, const NumericContext&);           \
  template std::optional<Vector<T>> solve<T>(const Matrix<T>&, const Vector<T>&, const NumericContext&); \
  template Matrix<T> inverse<T>(const Matrix<T>&, const NumericContext&);                               \
  template T determinant<T>(const Matrix<T>&);                                                          \
  template Vector<T> canonical_kernel_vector<T>(const std::vector<Vector<T>>&, const NumericContext&);

SIPP_INSTANTIATE_ELIMINATION(Rational)
SIPP_INSTANTIATE_ELIMINATION(double)

}  // namespace sipp
