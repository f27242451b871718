#include <cmath>

#include "sipp/linalg/elimination.hpp"
#include "sipp/verification/feasibility.hpp"
#include "sipp/verification/verification.hpp"

namespace sipp {

namespace {

IndexSet support_of(const SignPattern& s) {
  IndexSet out;
  for (std::size_t j = 0; j < s.cols(); ++j)
    for (std::size_t i = 0; i < s.rows(); ++i)
      if (s(i, j) != 0) out.push_back({i, j});
  return out;
}

IndexSet zeros_of(const SignPattern& s) {
  IndexSet out;
  for (std::size_t j = 0; j < s.cols(); ++j)
    for (std::size_t i = 0; i < s.rows(); ++i)
      if (s(i, j) == 0) out.push_back({i, j});
  return out;
}

void normalize_signed(Vector<double>& v) {
  double big = 0.0;
  for (double x : v) big = std::max(big, std::fabs(x));
  if (big == 0.0) return;
  double lead = 0.0;
  for (double x : v)
    if (std::fabs(x) > 1e-12 * big) {
      lead = x;
      break;
    }
  const double f = (lead < 0 ? -1.0 : 1.0) / big;
  for (double& x : v) x *= f;
}

std::vector<Obstruction> obstructions_from(const LabeledMatrix<double>& psi, const NumericContext& ctx) {
  std::vector<Obstruction> out;
  for (auto v : left_nullspace(psi.data, ctx)) {
    normalize_signed(v);
    Obstruction o;
    o.labels = psi.row_labels;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (std::fabs(v[k]) <= 1e-9) v[k] = 0.0;
      else o.support.push_back(psi.row_labels[k]);
    }
    o.values = std::move(v);
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace

template <class T>
LiberationResult<T> liberate(const Matrix<T>& q, const Matrix<T>& b, const NumericContext& ctx) {
  require_row_orthogonal(q, ctx);
  require_tangent(q, b, ctx);
  LiberationResult<T> res;
  NumericContext sign_ctx = ctx;
  if constexpr (!FieldTraits<T>::exact) sign_ctx.tau = std::max(ctx.tau, 1e-9) * std::max(1.0, max_abs(b));
  res.r = sign_of(b, sign_ctx);
  res.liberated = super_pattern(sign_of(q, ctx), res.r);

  const IndexSet supp = support_of(res.liberated);
  const Matrix<T> system = symmetric_system(q, supp);
  const auto kernel = nullspace(system, ctx);
  res.unknowns = system.cols();
  res.system_rank = res.unknowns - kernel.size();
  res.verdict = kernel.empty();
  if (!res.verdict) res.witness = assemble_symmetric(canonical_kernel_vector(kernel, ctx), q.rows());

  const Matrix<double> qd = to_double(q);
  const Matrix<double> p = orthogonal_completion(qd, ctx);
  const auto ts = tangent_space_matrix(qd, p, ctx);
  const auto rows = restrict_rows(ts, zeros_of(res.liberated));
  res.mll_rows_independent = rank(rows.data, ctx) == rows.row_labels.size();
  return res;
}

std::vector<Obstruction> liberation_obstructions(const Matrix<double>& q, const NumericContext& ctx) {
  const Matrix<double> p = orthogonal_completion(q, ctx);
  return obstructions_from(tangent_verification_matrix(q, p, ctx), ctx);
}

TangentDirectionResult find_tangent_direction(const Matrix<double>& q, const SignPattern& target,
                                              const NumericContext& ctx) {
  const SignPattern s = sign_of(q, ctx);
  if (target.rows() != q.rows() || target.cols() != q.cols())
    throw Error(ErrorKind::DimensionMismatch, "target pattern must have the shape of Q");
  if (!is_super_pattern(target, s)) throw Error(ErrorKind::InvalidInput, "target is not a super pattern of sign(Q)");
  const Matrix<double> p = orthogonal_completion(q, ctx);
  const auto ts = tangent_space_matrix(q, p, ctx);
  const IndexSet zeros = zeros_of(s);
  const auto psi = restrict_rows(ts, zeros);

  TangentDirectionResult res;
  std::vector<std::size_t> free_rows;
  for (std::size_t t = 0; t < zeros.size(); ++t) {
    if (target(zeros[t].row, zeros[t].col) == 0) res.kept_zeros.push_back(zeros[t]);
    else {
      res.liberated.push_back(zeros[t]);
      free_rows.push_back(t);
    }
  }
  if (res.liberated.empty()) {
    res.b = Matrix<double>(q.rows(), q.cols());
    return res;
  }

  // w must be orthogonal to the left nullspace of Psi, vanish on kept zeros
  // and carry the target sign with magnitude >= 1 on liberated zeros.
  const auto left = left_nullspace(psi.data, ctx);
  Matrix<double> a(left.size(), free_rows.size());
  for (std::size_t r = 0; r < left.size(); ++r)
    for (std::size_t k = 0; k < free_rows.size(); ++k) {
      const auto& e = zeros[free_rows[k]];
      a(r, k) = left[r][free_rows[k]] * target(e.row, e.col);
    }
  Vector<double> ones(free_rows.size(), 1.0);
  Vector<double> mag = ones;
  const Vector<double> a1 = a * ones;
  bool unit_ok = true;
  for (double x : a1) unit_ok &= std::fabs(x) <= 1e-9;
  if (!unit_ok) {
    Vector<double> rhs(a1.size());
    for (std::size_t r = 0; r < a1.size(); ++r) rhs[r] = -a1[r];
    const auto extra = find_nonnegative_solution(a, rhs);
    if (!extra) {
      res.obstructions = obstructions_from(psi, ctx);
      return res;
    }
    for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = 1.0 + (*extra)[k];
  }
  Vector<double> w(zeros.size(), 0.0);
  for (std::size_t k = 0; k < free_rows.size(); ++k) {
    const auto& e = zeros[free_rows[k]];
    w[free_rows[k]] = mag[k] * target(e.row, e.col);
  }
  const Vector<double> c = least_squares_min_norm(psi.data, w, ctx);
  Matrix<double> b = unvec(ts.data * c, q.rows(), q.cols());
  for (const auto& e : res.kept_zeros) b(e.row, e.col) = 0.0;
  for (std::size_t k = 0; k < free_rows.size(); ++k) {
    const auto& e = zeros[free_rows[k]];
    if (FieldTraits<double>::sign(b(e.row, e.col), ctx) != target(e.row, e.col)) {
      res.obstructions = obstructions_from(psi, ctx);
      return res;
    }
  }
  double norm = 0.0;
  for (double x : b.data()) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : b.data()) x /= norm;
  res.b = std::move(b);
  return res;
}

template <class T>
AddVertexResult<T> add_vertex_check(const Matrix<T>& q, const Vector<T>& k, const NumericContext& ctx) {
  if (!q.is_square()) throw Error(ErrorKind::Precondition, "add_vertex_check needs a square Q");
  if (!is_nowhere_zero(q, ctx)) throw Error(ErrorKind::Precondition, "add_vertex_check needs a nowhere-zero Q");
  if (k.size() != q.rows()) throw Error(ErrorKind::DimensionMismatch, "k must have length n");
  require_row_orthogonal(q, ctx);
  const std::size_t n = q.rows();
  AddVertexResult<T> res;
  res.ktq.assign(n, T(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) res.ktq[j] += k[i] * q(i, j);

  std::vector<Vector<T>> cols;
  for (std::size_t j = 0; j < n; ++j)
    if (FieldTraits<T>::is_zero(res.ktq[j], ctx)) {
      Vector<T> e(n, T(0));
      e[j] = T(1);
      cols.push_back(std::move(e));
    }
  res.dim_d = cols.size();
  for (std::size_t i = 0; i < n; ++i)
    if (FieldTraits<T>::is_zero(k[i], ctx)) cols.push_back(q.row(i));
  res.dim_f = cols.size() - res.dim_d;
  Matrix<T> stacked(n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) stacked(r, c) = cols[c][r];
  res.verdict = cols.empty() || rank(stacked, ctx) == cols.size();

  res.pattern = SignPattern(n + 1, n + 1);
  res.pattern.set(0, 0, 1);
  for (std::size_t j = 0; j < n; ++j) res.pattern.set(0, j + 1, FieldTraits<T>::sign(res.ktq[j], ctx));
  for (std::size_t i = 0; i < n; ++i) {
    res.pattern.set(i + 1, 0, -FieldTraits<T>::sign(k[i], ctx));
    for (std::size_t j = 0; j < n; ++j) res.pattern.set(i + 1, j + 1, FieldTraits<T>::sign(q(i, j), ctx));
  }
  res.qhat = direct_sum(Matrix<T>::identity(1), q);
  Matrix<T> kk(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    kk(0, i + 1) = k[i];
    kk(i + 1, 0) = -k[i];
  }
  res.direction = kk * res.qhat;
  return res;
}

template <class T>
LiberationResult<T> waters_block_check(const std::vector<Matrix<T>>& qs, const std::vector<std::vector<Matrix<T>>>& blocks,
                                       const NumericContext& ctx) {
  const std::size_t k = qs.size();
  if (k == 0) throw Error(ErrorKind::InvalidInput, "waters_block_check needs at least one block");
  if (blocks.size() != k) throw Error(ErrorKind::DimensionMismatch, "block grid must be k x k");
  for (const auto& qi : qs) {
    if (!qi.is_square()) throw Error(ErrorKind::Precondition, "each Q_i must be square");
    require_row_orthogonal(qi, ctx);
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (blocks[i].size() != k) throw Error(ErrorKind::DimensionMismatch, "block grid must be k x k");
    for (std::size_t j = 0; j < k; ++j)
      if (blocks[i][j].rows() != qs[i].rows() || blocks[i][j].cols() != qs[j].rows())
        throw Error(ErrorKind::DimensionMismatch, "block B_ij must be n_i x n_j");
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Matrix<T> expected = -(qs[i] * blocks[j][i].transpose() * qs[j]);
      const bool ok = FieldTraits<T>::exact ? expected == blocks[i][j]
                                            : max_abs_diff(expected, blocks[i][j]) <= std::max(ctx.tau, 1e-9);
      if (!ok)
        throw Error(ErrorKind::InvalidInput, "blocks (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                 ") and (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                                                 ") violate B_ij = -Q_i B_ji^T Q_j");
    }
  Matrix<T> q = qs.front();
  for (std::size_t i = 1; i < k; ++i) q = direct_sum(q, qs[i]);
  return liberate(q, block(blocks), ctx);
}

#define SIPP_INSTANTIATE(T)                                                                                   \
  template LiberationResult<T> liberate(const Matrix<T>&, const Matrix<T>&, const NumericContext&);          \
  template AddVertexResult<T> add_vertex_check(const Matrix<T>&, const Vector<T>&, const NumericContext&);   \
  template LiberationResult<T> waters_block_check(const std::vector<Matrix<T>>&,                             \
                                                  const std::vector<std::vector<Matrix<T>>>&, const NumericContext&);

SIPP_INSTANTIATE(Rational)
SIPP_INSTANTIATE(double)

#undef SIPP_INSTANTIATE

}  // namespace sipp
