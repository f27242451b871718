#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sipp/core/sipp.hpp"
#include "sipp/signpat/sign_pattern.hpp"

namespace sipp {

/// Column label: tangent basis element B_ij (i < j) or normal basis element
/// C_ij (i <= j). Zero-based.
struct BasisLabel {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

template <class T>
struct LabeledMatrix {
  Matrix<T> data;
  IndexSet row_labels;
  std::vector<BasisLabel> col_labels;
};

enum class VerificationRoute { Tangent, Normal };

const char* to_string(VerificationRoute r);

/// P orthogonal with first m rows equal to Q, so Q P^T = [I | O]. Square
/// input returns Q. Non-square rational input is rejected (the completion
/// is generally irrational).
Matrix<double> orthogonal_completion(const Matrix<double>& q, const NumericContext& ctx = {});
Matrix<Rational> orthogonal_completion(const Matrix<Rational>& q, const NumericContext& ctx = {});

/// Tangent basis labels in column order: (i, j) for i < m, i < j < n.
std::vector<BasisLabel> tangent_basis_labels(std::size_t m, std::size_t n);

/// The basis matrix B_ij: K_ij P for j < m, E_ij P otherwise.
template <class T>
Matrix<T> tangent_basis_matrix(const Matrix<T>& p, std::size_t m, const BasisLabel& label);

/// mn x (mn - m(m+1)/2); rows labeled in column-stacking order.
template <class T>
LabeledMatrix<T> tangent_space_matrix(const Matrix<T>& q, const Matrix<T>& p, const NumericContext& ctx = {});

/// Rows of the tangent space matrix at the zero positions of Q.
template <class T>
LabeledMatrix<T> tangent_verification_matrix(const Matrix<T>& q, const Matrix<T>& p, const NumericContext& ctx = {});

/// mn x m(m+1)/2; columns C_ij = (E_ij + E_ji) Q (i < j) and E_ii Q.
template <class T>
LabeledMatrix<T> normal_space_matrix(const Matrix<T>& q, const NumericContext& ctx = {});

/// Rows of the normal space matrix at the support of Q.
template <class T>
LabeledMatrix<T> normal_verification_matrix(const Matrix<T>& q, const NumericContext& ctx = {});

/// Rows of the normal space matrix at the given positions.
template <class T>
LabeledMatrix<T> restrict_rows(const LabeledMatrix<T>& a, const IndexSet& rows);

/// Tangent route: rows of Psi independent. Normal route: columns of Omega
/// independent. A NotSIPP certificate carries the symmetric witness.
template <class T>
SippCertificate<T> sipp_by_verification(const Matrix<T>& q, VerificationRoute route, const NumericContext& ctx = {});

template <class T>
void require_row_orthogonal(const Matrix<T>& q, const NumericContext& ctx);

/// Throws InvalidInput unless B Q^T is skew-symmetric.
template <class T>
void require_tangent(const Matrix<T>& q, const Matrix<T>& b, const NumericContext& ctx = {});

template <class T>
struct LiberationResult {
  /// The symmetric system (XQ) o S_R = O has only X = O.
  bool verdict = false;
  SignPattern r;
  SignPattern liberated;
  std::size_t system_rank = 0;
  std::size_t unknowns = 0;
  std::optional<Matrix<T>> witness;
  /// Rows of Psi_P(Q) at the zeros of S_R independent (binary64).
  bool mll_rows_independent = false;
};

template <class T>
LiberationResult<T> liberate(const Matrix<T>& q, const Matrix<T>& b, const NumericContext& ctx = {});

/// B = K Q for skew K.
template <class T>
Matrix<T> direction_from_skew(const Matrix<T>& q, const Matrix<T>& k, const NumericContext& ctx = {});

struct Obstruction {
  /// Row labels of Psi_P(Q) and the left-null vector on them.
  IndexSet labels;
  Vector<double> values;
  /// Labels where the vector is nonzero.
  IndexSet support;
};

/// Labeled basis of the left nullspace of Psi_P(Q) (binary64, each vector
/// scaled to max-magnitude 1 with positive leading entry).
std::vector<Obstruction> liberation_obstructions(const Matrix<double>& q, const NumericContext& ctx = {});

struct TangentDirectionResult {
  /// Unit Frobenius norm tangent direction, when one exists.
  std::optional<Matrix<double>> b;
  IndexSet kept_zeros;
  IndexSet liberated;
  /// Filled when no direction exists.
  std::vector<Obstruction> obstructions;
};

/// Searches for B in the tangent space at Q with B = 0 on the zeros of Q the
/// target keeps and sign(B) = target on the zeros it fills.
TangentDirectionResult find_tangent_direction(const Matrix<double>& q, const SignPattern& target,
                                              const NumericContext& ctx = {});

template <class T>
struct AddVertexResult {
  bool verdict = false;
  std::size_t dim_d = 0;
  std::size_t dim_f = 0;
  Vector<T> ktq;
  /// [[1, sgn(k^T Q)], [-sgn(k), sgn(Q)]].
  SignPattern pattern;
  /// [1] (+) Q and the direction K ([1] (+) Q).
  Matrix<T> qhat;
  Matrix<T> direction;
};

template <class T>
AddVertexResult<T> add_vertex_check(const Matrix<T>& q, const Vector<T>& k, const NumericContext& ctx = {});

/// Checks B_ij = -Q_i B_ji^T Q_j for every block pair, then runs liberate on
/// (direct sum of Q_i, B). Throws InvalidInput on incompatible blocks.
template <class T>
LiberationResult<T> waters_block_check(const std::vector<Matrix<T>>& qs, const std::vector<std::vector<Matrix<T>>>& blocks,
                                       const NumericContext& ctx = {});

}  // namespace sipp
