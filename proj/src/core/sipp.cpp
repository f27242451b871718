#include "sipp/core/sipp.hpp"

#include "sipp/linalg/elimination.hpp"

namespace sipp {

const char* to_string(SippVerdict v) {
  switch (v) {
    case SippVerdict::HasSIPP: return "HasSIPP";
    case SippVerdict::NotSIPP: return "NotSIPP";
    case SippVerdict::NotFullRank: return "NotFullRank";
  }
  return "unknown";
}

std::vector<SymIndex> symmetric_basis(std::size_t m) {
  std::vector<SymIndex> out;
  out.reserve(m * (m + 1) / 2);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = k; l < m; ++l) out.emplace_back(k, l);
  return out;
}

template <class T>
Matrix<T> assemble_symmetric(const Vector<T>& x, std::size_t m) {
  const auto basis = symmetric_basis(m);
  if (x.size() != basis.size()) throw Error(ErrorKind::DimensionMismatch, "assemble_symmetric: length mismatch");
  Matrix<T> out(m, m);
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const auto [k, l] = basis[t];
    out(k, l) = x[t];
    out(l, k) = x[t];
  }
  return out;
}

template <class T>
Matrix<T> symmetric_system(const Matrix<T>& m, const IndexSet& supp) {
  const auto basis = symmetric_basis(m.rows());
  Matrix<T> a(supp.size(), basis.size());
  for (std::size_t r = 0; r < supp.size(); ++r) {
    const auto [i, j] = supp[r];
    for (std::size_t t = 0; t < basis.size(); ++t) {
      const auto [k, l] = basis[t];
      // X_ik M_kj summed over k; x_kl sits at (k,l) and (l,k).
      if (k == l) {
        if (i == k) a(r, t) = m(k, j);
      } else {
        if (i == k) a(r, t) += m(l, j);
        if (i == l) a(r, t) += m(k, j);
      }
    }
  }
  return a;
}

template <class T>
Matrix<T> sipp_system(const Matrix<T>& m, const NumericContext& ctx) {
  return symmetric_system(m, support(m, ctx));
}

template <class T>
SippCertificate<T> has_sipp(const Matrix<T>& m, const NumericContext& ctx) {
  if (m.rows() > m.cols())
    throw Error(ErrorKind::Precondition, "the SIPP is defined for m x n matrices with m <= n");
  SippCertificate<T> cert;
  cert.unknowns = m.rows() * (m.rows() + 1) / 2;
  cert.full_rank_checked = true;
  if (rank(m, ctx) < m.rows()) {
    cert.verdict = SippVerdict::NotFullRank;
    return cert;
  }
  const Matrix<T> a = sipp_system(m, ctx);
  const auto kernel = nullspace(a, ctx);
  cert.system_rank = cert.unknowns - kernel.size();
  if (kernel.empty()) {
    cert.verdict = SippVerdict::HasSIPP;
    return cert;
  }
  cert.verdict = SippVerdict::NotSIPP;
  cert.witness = assemble_symmetric(canonical_kernel_vector(kernel, ctx), m.rows());
  return cert;
}

template <class T>
Matrix<T> inverse_route_system(const Matrix<T>& m, const Matrix<T>& m_inv, const IndexSet& zeros) {
  const std::size_t n = m.rows();
  Matrix<T> a(n * (n - 1) / 2, zeros.size());
  std::size_t r = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++r)
      for (std::size_t t = 0; t < zeros.size(); ++t) {
        const auto [p, q] = zeros[t];
        // y_pq contributes y_pq Minv(q, j) to (Y Minv)_pj.
        if (p == i) a(r, t) += m_inv(q, j);
        if (p == j) a(r, t) -= m_inv(q, i);
      }
  return a;
}

template <class T>
InverseRouteCertificate<T> has_sipp_square_via_inverse(const Matrix<T>& m, const NumericContext& ctx) {
  if (!m.is_square()) throw Error(ErrorKind::Precondition, "the inverse route needs a square matrix");
  const Matrix<T> m_inv = inverse(m, ctx);
  const IndexSet zeros = zero_positions(m, ctx);
  InverseRouteCertificate<T> cert;
  cert.unknowns = zeros.size();
  if (zeros.empty()) {
    cert.verdict = SippVerdict::HasSIPP;
    return cert;
  }
  const Matrix<T> a = inverse_route_system(m, m_inv, zeros);
  const auto kernel = nullspace(a, ctx);
  cert.system_rank = zeros.size() - kernel.size();
  if (kernel.empty()) {
    cert.verdict = SippVerdict::HasSIPP;
    return cert;
  }
  cert.verdict = SippVerdict::NotSIPP;
  const Vector<T> v = canonical_kernel_vector(kernel, ctx);
  Matrix<T> y(m.rows(), m.cols());
  for (std::size_t t = 0; t < zeros.size(); ++t) y(zeros[t].row, zeros[t].col) = v[t];
  Matrix<T> x = y * m_inv;
  if constexpr (!FieldTraits<T>::exact) {
    // Remove rounding asymmetry.
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = i + 1; j < x.cols(); ++j) x(i, j) = x(j, i) = (x(i, j) + x(j, i)) / 2;
  }
  cert.y = std::move(y);
  cert.witness = std::move(x);
  return cert;
}

template <class T>
bool verifies_witness(const Matrix<T>& m, const Matrix<T>& x, const NumericContext& ctx) {
  if (x.rows() != m.rows() || !x.is_square()) return false;
  const Matrix<T> xm = x * m;
  const double scale = std::max(1.0, max_abs(x) * max_abs(m) * static_cast<double>(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!FieldTraits<T>::is_zero(m(i, j), ctx) && !FieldTraits<T>::is_zero(xm(i, j), ctx, scale)) return false;
  return true;
}

template <class T>
RemoveRowReport<T> check_remove_row(const Matrix<T>& bhat, const Vector<T>& b, const NumericContext& ctx) {
  const std::size_t m = bhat.rows(), n = bhat.cols();
  if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "check_remove_row: b must have one entry per column");
  if (m < 2 || m + 1 > n) throw Error(ErrorKind::Precondition, "check_remove_row needs 2 <= m <= n - 1");
  Matrix<T> row(1, n);
  for (std::size_t j = 0; j < n; ++j) row(0, j) = b[j];
  const Matrix<T> full = vstack(bhat, row);

  RemoveRowReport<T> rep;
  rep.bhat_verdict = has_sipp(bhat, ctx).verdict;
  rep.b_verdict = has_sipp(full, ctx).verdict;
  rep.rows_independent = rank(full, ctx) == m + 1;
  rep.b_nowhere_zero = is_nowhere_zero(b, ctx);
  const bool bhat_has = rep.bhat_verdict == SippVerdict::HasSIPP;
  const bool b_has = rep.b_verdict == SippVerdict::HasSIPP;
  rep.implication_i_holds = !b_has || bhat_has;
  rep.hypotheses_ii_met = bhat_has && rep.rows_independent && rep.b_nowhere_zero;
  rep.implication_ii_holds = !rep.hypotheses_ii_met || b_has;
  return rep;
}

#define SIPP_INSTANTIATE(T)                                                                              \
  template Matrix<T> assemble_symmetric(const Vector<T>&, std::size_t);                                 \
  template Matrix<T> symmetric_system(const Matrix<T>&, const IndexSet&);                                \
  template Matrix<T> sipp_system(const Matrix<T>&, const NumericContext&);                              \
  template SippCertificate<T> has_sipp(const Matrix<T>&, const NumericContext&);                        \
  template Matrix<T> inverse_route_system(const Matrix<T>&, const Matrix<T>&, const IndexSet&);         \
  template InverseRouteCertificate<T> has_sipp_square_via_inverse(const Matrix<T>&, const NumericContext&); \
  template bool verifies_witness(const Matrix<T>&, const Matrix<T>&, const NumericContext&);            \
  template RemoveRowReport<T> check_remove_row(const Matrix<T>&, const Vector<T>&, const NumericContext&);

SIPP_INSTANTIATE(Rational)
SIPP_INSTANTIATE(double)

#undef SIPP_INSTANTIATE

}  // namespace sipp
