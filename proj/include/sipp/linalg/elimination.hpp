#pragma once

#include <optional>
#include <vector>

#include "sipp/linalg/matrix.hpp"

namespace sipp {

template <class T>
struct RrefResult {
  Matrix<T> reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

/// Reduced row echelon form. Exact over rationals; over binary64 it uses
/// partial pivoting and treats |x| <= tau * max|initial entry| as zero.
template <class T>
RrefResult<T> rref(const Matrix<T>& m, const NumericContext& ctx = {});

template <class T>
std::size_t rank(const Matrix<T>& m, const NumericContext& ctx = {});

/// Basis of {v : M v = 0}; one vector per non-pivot column of rref(M).
template <class T>
std::vector<Vector<T>> nullspace(const Matrix<T>& m, const NumericContext& ctx = {});

/// Basis of {x : x^T M = 0}.
template <class T>
std::vector<Vector<T>> left_nullspace(const Matrix<T>& m, const NumericContext& ctx = {});

/// Some solution of A x = b (free variables set to zero), or nothing when
/// the system is inconsistent.
template <class T>
std::optional<Vector<T>> solve(const Matrix<T>& a, const Vector<T>& b, const NumericContext& ctx = {});

/// Throws ErrorKind::Singular for rank-deficient input.
template <class T>
Matrix<T> inverse(const Matrix<T>& a, const NumericContext& ctx = {});

template <class T>
T determinant(const Matrix<T>& a);

/// Minimum-norm least-squares solution of A x = b (binary64 only).
Vector<double> least_squares_min_norm(const Matrix<double>& a, const Vector<double>& b, const NumericContext& ctx = {});

/// Picks the basis vector whose sorted support is lexicographically least
/// and rescales it: to a primitive integer vector with positive leading entry
/// (rationals), or to max-magnitude 1 with positive leading entry (binary64).
template <class T>
Vector<T> canonical_kernel_vector(const std::vector<Vector<T>>& basis, const NumericContext& ctx = {});

}  // namespace sipp
