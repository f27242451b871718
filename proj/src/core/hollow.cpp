#include "sipp/core/hollow.hpp"

namespace sipp {

template <class T>
bool is_hollow(const Matrix<T>& q, const NumericContext& ctx) {
  if (!q.is_square()) return false;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j)
      if (FieldTraits<T>::is_zero(q(i, j), ctx) != (i == j)) return false;
  return true;
}

template <class T>
HollowSignatureResult hollow_sipp_by_signature(const Matrix<T>& q, const NumericContext& ctx) {
  if (!is_hollow(q, ctx)) throw Error(ErrorKind::Precondition, "matrix is not hollow");
  if (!is_row_orthogonal(q, ctx)) throw Error(ErrorKind::Precondition, "matrix is not orthogonal");
  const std::size_t n = q.rows();
  HollowSignatureResult res;

  // d1_i q_ij d2_j = d1_j q_ji d2_i needs |q_ij| = |q_ji| and
  // e_i e_j = sgn(q_ij q_ji) for e = d1 d2; the off-diagonal graph is complete
  // so e_0 = +1 fixes everything.
  std::vector<int> e(n, 1);
  for (std::size_t j = 1; j < n; ++j)
    e[j] = FieldTraits<T>::sign(q(0, j), ctx) * FieldTraits<T>::sign(q(j, 0), ctx);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!FieldTraits<T>::is_zero(FieldTraits<T>::abs(q(i, j)) - FieldTraits<T>::abs(q(j, i)), ctx)) return res;
      if (e[i] * e[j] != FieldTraits<T>::sign(q(i, j), ctx) * FieldTraits<T>::sign(q(j, i), ctx)) return res;
    }
  res.verdict = SippVerdict::NotSIPP;
  res.d1 = e;
  res.d2 = std::vector<int>(n, 1);
  return res;
}

template bool is_hollow(const Matrix<Rational>&, const NumericContext&);
template bool is_hollow(const Matrix<double>&, const NumericContext&);
template HollowSignatureResult hollow_sipp_by_signature(const Matrix<Rational>&, const NumericContext&);
template HollowSignatureResult hollow_sipp_by_signature(const Matrix<double>&, const NumericContext&);

}  // namespace sipp
