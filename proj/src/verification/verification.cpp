#include "sipp/verification/verification.hpp"

#include <cmath>

#include "sipp/linalg/elimination.hpp"

namespace sipp {

const char* to_string(VerificationRoute r) { return r == VerificationRoute::Tangent ? "tangent" : "normal"; }

template <class T>
void require_row_orthogonal(const Matrix<T>& q, const NumericContext& ctx) {
  if (q.rows() > q.cols()) throw Error(ErrorKind::Precondition, "row orthogonal input needs m <= n");
  if (!is_row_orthogonal(q, ctx))
    throw Error(ErrorKind::Precondition,
                "matrix is not row orthogonal (residual " + std::to_string(orthogonality_residual(q)) + ")");
}

Matrix<double> orthogonal_completion(const Matrix<double>& q, const NumericContext& ctx) {
  require_row_orthogonal(q, ctx);
  const std::size_t m = q.rows(), n = q.cols();
  if (m == n) return q;
  std::vector<Vector<double>> rows;
  for (std::size_t i = 0; i < m; ++i) rows.push_back(q.row(i));
  auto residual = [&](std::size_t k) {
    Vector<double> v(n, 0.0);
    v[k] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& r : rows) {
        double dot = 0.0;
        for (std::size_t j = 0; j < n; ++j) dot += r[j] * v[j];
        for (std::size_t j = 0; j < n; ++j) v[j] -= dot * r[j];
      }
    return v;
  };
  while (rows.size() < n) {
    Vector<double> best;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
      auto v = residual(k);
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      // Strict comparison keeps the lowest index on ties.
      if (norm > best_norm + 1e-12) {
        best_norm = norm;
        best = std::move(v);
      }
    }
    for (double& x : best) x /= best_norm;
    rows.push_back(std::move(best));
  }
  return Matrix<double>::from_rows(rows);
}

Matrix<Rational> orthogonal_completion(const Matrix<Rational>& q, const NumericContext& ctx) {
  require_row_orthogonal(q, ctx);
  if (!q.is_square())
    throw Error(ErrorKind::Precondition, "orthogonal completion of a non-square matrix needs float mode");
  return q;
}

std::vector<BasisLabel> tangent_basis_labels(std::size_t m, std::size_t n) {
  std::vector<BasisLabel> out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back({i, j});
  return out;
}

template <class T>
Matrix<T> tangent_basis_matrix(const Matrix<T>& p, std::size_t m, const BasisLabel& label) {
  const std::size_t n = p.cols();
  Matrix<T> b(m, n);
  for (std::size_t c = 0; c < n; ++c) {
    b(label.i, c) = p(label.j, c);
    if (label.j < m) b(label.j, c) = -p(label.i, c);
  }
  return b;
}

namespace {

template <class T>
void require_completion(const Matrix<T>& q, const Matrix<T>& p, const NumericContext& ctx) {
  if (p.rows() != q.cols() || !p.is_square()) throw Error(ErrorKind::DimensionMismatch, "P must be n x n");
  Matrix<T> target(q.rows(), q.cols());
  for (std::size_t i = 0; i < q.rows(); ++i) target(i, i) = T(1);
  const Matrix<T> qp = q * p.transpose();
  const bool ok = FieldTraits<T>::exact ? qp == target : max_abs_diff(qp, target) <= std::max(ctx.tau, 1e-9);
  if (!ok) throw Error(ErrorKind::Precondition, "Q P^T is not [I | O]");
}

IndexSet all_positions(std::size_t m, std::size_t n) {
  IndexSet out;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) out.push_back({i, j});
  return out;
}

}  // namespace

template <class T>
LabeledMatrix<T> tangent_space_matrix(const Matrix<T>& q, const Matrix<T>& p, const NumericContext& ctx) {
  require_completion(q, p, ctx);
  const std::size_t m = q.rows(), n = q.cols();
  LabeledMatrix<T> out;
  out.col_labels = tangent_basis_labels(m, n);
  out.row_labels = all_positions(m, n);
  out.data = Matrix<T>(m * n, out.col_labels.size());
  for (std::size_t c = 0; c < out.col_labels.size(); ++c) {
    const auto v = vec(tangent_basis_matrix(p, m, out.col_labels[c]));
    for (std::size_t r = 0; r < v.size(); ++r) out.data(r, c) = v[r];
  }
  return out;
}

template <class T>
LabeledMatrix<T> restrict_rows(const LabeledMatrix<T>& a, const IndexSet& rows) {
  LabeledMatrix<T> out;
  out.col_labels = a.col_labels;
  out.row_labels = rows;
  out.data = Matrix<T>(rows.size(), a.data.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t src = a.row_labels.size();
    for (std::size_t k = 0; k < a.row_labels.size(); ++k)
      if (a.row_labels[k] == rows[r]) {
        src = k;
        break;
      }
    if (src == a.row_labels.size()) throw Error(ErrorKind::InvalidInput, "restrict_rows: unknown row label");
    for (std::size_t c = 0; c < a.data.cols(); ++c) out.data(r, c) = a.data(src, c);
  }
  return out;
}

template <class T>
LabeledMatrix<T> tangent_verification_matrix(const Matrix<T>& q, const Matrix<T>& p, const NumericContext& ctx) {
  return restrict_rows(tangent_space_matrix(q, p, ctx), zero_positions(q, ctx));
}

template <class T>
LabeledMatrix<T> normal_space_matrix(const Matrix<T>& q, const NumericContext& ctx) {
  require_row_orthogonal(q, ctx);
  const std::size_t m = q.rows(), n = q.cols();
  LabeledMatrix<T> out;
  for (const auto& [k, l] : symmetric_basis(m)) out.col_labels.push_back({k, l});
  out.row_labels = all_positions(m, n);
  out.data = Matrix<T>(m * n, out.col_labels.size());
  for (std::size_t c = 0; c < out.col_labels.size(); ++c) {
    const auto [k, l] = out.col_labels[c];
    Matrix<T> cm(m, n);
    for (std::size_t j = 0; j < n; ++j) {
      cm(k, j) = q(l, j);
      if (k != l) cm(l, j) = q(k, j);
    }
    const auto v = vec(cm);
    for (std::size_t r = 0; r < v.size(); ++r) out.data(r, c) = v[r];
  }
  return out;
}

template <class T>
LabeledMatrix<T> normal_verification_matrix(const Matrix<T>& q, const NumericContext& ctx) {
  return restrict_rows(normal_space_matrix(q, ctx), support(q, ctx));
}

template <class T>
SippCertificate<T> sipp_by_verification(const Matrix<T>& q, VerificationRoute route, const NumericContext& ctx) {
  require_row_orthogonal(q, ctx);
  const std::size_t m = q.rows();
  SippCertificate<T> cert;
  cert.unknowns = m * (m + 1) / 2;
  cert.full_rank_checked = true;  // row orthogonal
  if (route == VerificationRoute::Normal) {
    const auto omega = normal_verification_matrix(q, ctx);
    const auto kernel = nullspace(omega.data, ctx);
    cert.system_rank = cert.unknowns - kernel.size();
    if (kernel.empty()) {
      cert.verdict = SippVerdict::HasSIPP;
      return cert;
    }
    cert.verdict = SippVerdict::NotSIPP;
    cert.witness = assemble_symmetric(canonical_kernel_vector(kernel, ctx), m);
    return cert;
  }
  const Matrix<T> p = orthogonal_completion(q, ctx);
  const auto psi = tangent_verification_matrix(q, p, ctx);
  const std::size_t zeros = psi.row_labels.size();
  const auto left = left_nullspace(psi.data, ctx);
  cert.system_rank = zeros - left.size();
  if (left.empty()) {
    cert.verdict = SippVerdict::HasSIPP;
    return cert;
  }
  // y is orthogonal to the tangent space, so Y = X Q with X = Y Q^T symmetric.
  const Vector<T> y = canonical_kernel_vector(left, ctx);
  Matrix<T> ym(q.rows(), q.cols());
  for (std::size_t t = 0; t < zeros; ++t) ym(psi.row_labels[t].row, psi.row_labels[t].col) = y[t];
  Matrix<T> x = ym * q.transpose();
  if constexpr (!FieldTraits<T>::exact) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) x(i, j) = x(j, i) = (x(i, j) + x(j, i)) / 2;
  }
  cert.verdict = SippVerdict::NotSIPP;
  cert.witness = std::move(x);
  return cert;
}

template <class T>
void require_tangent(const Matrix<T>& q, const Matrix<T>& b, const NumericContext& ctx) {
  if (b.rows() != q.rows() || b.cols() != q.cols())
    throw Error(ErrorKind::DimensionMismatch, "tangent direction must have the shape of Q");
  const Matrix<T> k = b * q.transpose();
  NumericContext loose = ctx;
  loose.tau = std::max(ctx.tau, 1e-9) * std::max(1.0, max_abs(b));
  if (!is_skew_symmetric(k, loose)) throw Error(ErrorKind::InvalidInput, "B Q^T is not skew-symmetric");
}

template <class T>
Matrix<T> direction_from_skew(const Matrix<T>& q, const Matrix<T>& k, const NumericContext& ctx) {
  if (k.rows() != q.rows()) throw Error(ErrorKind::DimensionMismatch, "K must be m x m");
  if (!is_skew_symmetric(k, ctx)) throw Error(ErrorKind::InvalidInput, "K is not skew-symmetric");
  return k * q;
}

#define SIPP_INSTANTIATE(T)                                                                                     \
  template void require_row_orthogonal(const Matrix<T>&, const NumericContext&);                               \
  template Matrix<T> tangent_basis_matrix(const Matrix<T>&, std::size_t, const BasisLabel&);                   \
  template LabeledMatrix<T> tangent_space_matrix(const Matrix<T>&, const Matrix<T>&, const NumericContext&);   \
  template LabeledMatrix<T> tangent_verification_matrix(const Matrix<T>&, const Matrix<T>&,                     \
                                                        const NumericContext&);                                \
  template LabeledMatrix<T> normal_space_matrix(const Matrix<T>&, const NumericContext&);                      \
  template LabeledMatrix<T> normal_verification_matrix(const Matrix<T>&, const NumericContext&);               \
  template LabeledMatrix<T> restrict_rows(const LabeledMatrix<T>&, const IndexSet&);                           \
  template SippCertificate<T> sipp_by_verification(const Matrix<T>&, VerificationRoute, const NumericContext&); \
  template void require_tangent(const Matrix<T>&, const Matrix<T>&, const NumericContext&);                    \
  template Matrix<T> direction_from_skew(const Matrix<T>&, const Matrix<T>&, const NumericContext&);

SIPP_INSTANTIATE(Rational)
SIPP_INSTANTIATE(double)

#undef SIPP_INSTANTIATE

}  // namespace sipp
