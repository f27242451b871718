#pragma once

#include "sipp/core/sipp.hpp"
#include "sipp/linalg/matrix.hpp"

namespace sipp {

/// Rows (1,-1,0,...), (1,1,-2,0,...), ..., (1,...,1): mutually orthogonal
/// integer rows. Throws InvalidInput for n < 2.
Matrix<Rational> hessenberg_rows(std::size_t n);

/// hessenberg_rows(n) with each row scaled to unit length.
Matrix<double> hessenberg_orthogonal(std::size_t n);

/// Zero-based plane indices i < j.
struct GivensSpec {
  std::size_t n = 0;
  std::size_t i = 0;
  std::size_t j = 1;
  double theta = 0.0;
};

/// Rotation of the (i, j)-plane by theta: G_ii = G_jj = cos, G_ij = -sin,
/// G_ji = sin.
Matrix<double> givens(const GivensSpec& g);

/// G A: row i <- c r_i - s r_j, row j <- c r_j + s r_i.
Matrix<double> pre_apply(const GivensSpec& g, const Matrix<double>& a);

/// A G: column i <- c c_i + s c_j, column j <- c c_j - s c_i.
Matrix<double> post_apply(const GivensSpec& g, const Matrix<double>& a);

/// Order-4 base A / sqrt(3).
Matrix<double> hollow_base4();

/// Order-5 base C / 2 with a = (-1 + sqrt 3) / 2, b = (-1 - sqrt 3) / 2.
Matrix<double> hollow_base5();

/// Hollow orthogonal matrix of order n >= 4 that is not signature equivalent
/// to a symmetric matrix. Throws Nonexistence for n in {1, 2, 3}.
Matrix<double> hollow_orthogonal(std::size_t n);

/// [[A, v x^T], [y u^T, B]] from M = [[A, v], [u^T, 0]] and
/// N = [[0, x^T], [y, B]], both hollow orthogonal.
Matrix<double> merge_hollow(const Matrix<double>& m, const Matrix<double>& n, const NumericContext& ctx = {});

template <class T>
struct ConstructionResult {
  Matrix<T> q;
  /// The inputs meet the hypotheses under which the output has the SIPP.
  bool sipp_implied = false;
};

/// General row orthogonal merge; x, y, u, v must be nowhere zero.
template <class T>
ConstructionResult<T> merge_row_orthogonal(const Matrix<T>& m, const Matrix<T>& n, const NumericContext& ctx = {});

/// [[A, O], [B, C]]; must be row orthogonal with B nowhere zero. The SIPP is
/// implied when A and C have it.
template <class T>
ConstructionResult<T> block_lower_triangular(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c,
                                             const NumericContext& ctx = {});

/// [[A, O], [b a^T, B]] from M = [[A], [a^T]] and N = [b | B]; a and b
/// nowhere zero. The output has the SIPP iff M and N do.
template <class T>
ConstructionResult<T> bordered(const Matrix<T>& m, const Matrix<T>& n, const NumericContext& ctx = {});

/// [A | O] with p columns; throws InvalidInput unless p > cols(A).
template <class T>
Matrix<T> pad_columns(const Matrix<T>& a, std::size_t p);

/// (I - eps K)(I + eps K)^{-1}; throws Singular if I + eps K is singular.
template <class T>
Matrix<T> cayley(const Matrix<T>& k, const T& eps, const NumericContext& ctx = {});

}  // namespace sipp
