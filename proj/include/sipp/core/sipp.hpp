#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sipp/linalg/matrix.hpp"

namespace sipp {

enum class SippVerdict { HasSIPP, NotSIPP, NotFullRank };

const char* to_string(SippVerdict v);

template <class T>
struct SippCertificate {
  SippVerdict verdict = SippVerdict::NotSIPP;
  /// Nonzero symmetric X with (XM) o M = O; present iff verdict is NotSIPP.
  std::optional<Matrix<T>> witness;
  std::size_t system_rank = 0;
  std::size_t unknowns = 0;
  bool full_rank_checked = false;
};

/// Symmetric basis index (k, l), k <= l, zero-based.
using SymIndex = std::pair<std::size_t, std::size_t>;

/// (0,0), (0,1), ..., (0,m-1), (1,1), ... : the order of the unknowns x_kl.
std::vector<SymIndex> symmetric_basis(std::size_t m);

/// Symmetric m x m matrix from coordinates in symmetric_basis order.
template <class T>
Matrix<T> assemble_symmetric(const Vector<T>& x, std::size_t m);

/// One row per listed position (i, j), one column per unknown x_kl: the
/// equation sum_k X_ik M_kj = 0.
template <class T>
Matrix<T> symmetric_system(const Matrix<T>& m, const IndexSet& positions);

/// One row per support position (i, j) of M (column-stacking order), one
/// column per unknown x_kl: the equation sum_k X_ik M_kj = 0.
template <class T>
Matrix<T> sipp_system(const Matrix<T>& m, const NumericContext& ctx = {});

/// Throws Precondition when m > n.
template <class T>
SippCertificate<T> has_sipp(const Matrix<T>& m, const NumericContext& ctx = {});

template <class T>
struct InverseRouteCertificate {
  SippVerdict verdict = SippVerdict::NotSIPP;
  /// Nonzero Y with Y o M = O and Y M^{-1} symmetric.
  std::optional<Matrix<T>> y;
  /// Y M^{-1}; satisfies (XM) o M = O.
  std::optional<Matrix<T>> witness;
  std::size_t system_rank = 0;
  std::size_t unknowns = 0;
};

/// Unknowns on the zero positions of M (column-stacking order), one
/// equation (Y M^{-1})_ij = (Y M^{-1})_ji per i < j.
template <class T>
Matrix<T> inverse_route_system(const Matrix<T>& m, const Matrix<T>& m_inv, const IndexSet& zeros);

/// Square nonsingular M only; throws Singular otherwise.
template <class T>
InverseRouteCertificate<T> has_sipp_square_via_inverse(const Matrix<T>& m, const NumericContext& ctx = {});

/// (X M) o M == O within tau.
template <class T>
bool verifies_witness(const Matrix<T>& m, const Matrix<T>& x, const NumericContext& ctx = {});

template <class T>
struct RemoveRowReport {
  SippVerdict bhat_verdict = SippVerdict::NotSIPP;
  SippVerdict b_verdict = SippVerdict::NotSIPP;
  bool rows_independent = false;
  bool b_nowhere_zero = false;
  /// B has the SIPP implies Bhat has the SIPP.
  bool implication_i_holds = false;
  /// Bhat has the SIPP, rows of B independent, b nowhere zero.
  bool hypotheses_ii_met = false;
  bool implication_ii_holds = false;
};

/// Evaluates both directions of the row-removal statement on B = [Bhat; b^T].
/// Requires 2 <= rows(Bhat) <= cols(Bhat) - 1.
template <class T>
RemoveRowReport<T> check_remove_row(const Matrix<T>& bhat, const Vector<T>& b, const NumericContext& ctx = {});

}  // namespace sipp
