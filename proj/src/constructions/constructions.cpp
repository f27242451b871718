#include "sipp/constructions/constructions.hpp"

#include <cmath>

#include "sipp/core/hollow.hpp"
#include "sipp/linalg/elimination.hpp"

namespace sipp {

Matrix<Rational> hessenberg_rows(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "Hessenberg construction needs n >= 2");
  Matrix<Rational> h(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) h(i, j) = 1;
    h(i, i + 1) = -static_cast<long>(i + 1);
  }
  for (std::size_t j = 0; j < n; ++j) h(n - 1, j) = 1;
  return h;
}

Matrix<double> hessenberg_orthogonal(std::size_t n) {
  const Matrix<double> h = to_double(hessenberg_rows(n));
  Matrix<double> q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) norm += h(i, j) * h(i, j);
    norm = std::sqrt(norm);
    for (std::size_t j = 0; j < n; ++j) q(i, j) = h(i, j) / norm;
  }
  return q;
}

namespace {
void check_givens(const GivensSpec& g, std::size_t dim) {
  if (!(g.i < g.j && g.j < g.n)) throw Error(ErrorKind::InvalidInput, "Givens rotation needs 0 <= i < j < n");
  if (dim != g.n) throw Error(ErrorKind::DimensionMismatch, "Givens rotation size does not match the matrix");
}
}  // namespace

Matrix<double> givens(const GivensSpec& g) {
  check_givens(g, g.n);
  Matrix<double> out = Matrix<double>::identity(g.n);
  const double c = std::cos(g.theta), s = std::sin(g.theta);
  out(g.i, g.i) = c;
  out(g.j, g.j) = c;
  out(g.i, g.j) = -s;
  out(g.j, g.i) = s;
  return out;
}

Matrix<double> pre_apply(const GivensSpec& g, const Matrix<double>& a) {
  check_givens(g, a.rows());
  const double c = std::cos(g.theta), s = std::sin(g.theta);
  Matrix<double> out = a;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    out(g.i, k) = c * a(g.i, k) - s * a(g.j, k);
    out(g.j, k) = c * a(g.j, k) + s * a(g.i, k);
  }
  return out;
}

Matrix<double> post_apply(const GivensSpec& g, const Matrix<double>& a) {
  check_givens(g, a.cols());
  const double c = std::cos(g.theta), s = std::sin(g.theta);
  Matrix<double> out = a;
  for (std::size_t k = 0; k < a.rows(); ++k) {
    out(k, g.i) = c * a(k, g.i) + s * a(k, g.j);
    out(k, g.j) = c * a(k, g.j) - s * a(k, g.i);
  }
  return out;
}

Matrix<double> hollow_base4() {
  const double r = 1.0 / std::sqrt(3.0);
  Matrix<double> a{{0, 1, 1, 1}, {1, 0, -1, 1}, {1, 1, 0, -1}, {1, -1, 1, 0}};
  return r * a;
}

Matrix<double> hollow_base5() {
  const double a = (-1.0 + std::sqrt(3.0)) / 2.0;
  const double b = (-1.0 - std::sqrt(3.0)) / 2.0;
  Matrix<double> c{{0, 1, 1, 1, 1}, {1, 0, a, 1, b}, {1, b, 0, a, 1}, {1, 1, b, 0, a}, {1, a, 1, b, 0}};
  return 0.5 * c;
}

Matrix<double> merge_hollow(const Matrix<double>& m, const Matrix<double>& n, const NumericContext& ctx) {
  if (!is_hollow(m, ctx) || !is_hollow(n, ctx)) throw Error(ErrorKind::Precondition, "merge_hollow needs hollow inputs");
  return merge_row_orthogonal(m, n, ctx).q;
}

Matrix<double> hollow_orthogonal(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "order must be positive");
  if (n == 1 || n == 3) throw Error(ErrorKind::Nonexistence, "no hollow orthogonal matrix of order " + std::to_string(n));
  if (n == 2)
    throw Error(ErrorKind::Nonexistence,
                "every hollow orthogonal matrix of order 2 is signature equivalent to a symmetric matrix");
  if (n == 4) return hollow_base4();
  if (n == 5) return hollow_base5();
  return merge_hollow(hollow_base4(), hollow_orthogonal(n - 2));
}

namespace {

template <class T>
bool has(const Matrix<T>& m, const NumericContext& ctx) {
  return m.rows() <= m.cols() && has_sipp(m, ctx).verdict == SippVerdict::HasSIPP;
}

template <class T>
void require_nowhere_zero(const Matrix<T>& v, const char* what, const NumericContext& ctx) {
  if (!is_nowhere_zero(v, ctx)) throw Error(ErrorKind::Precondition, std::string(what) + " must be nowhere zero");
}

template <class T>
void require_orthogonal_rows(const Matrix<T>& q, const char* what, const NumericContext& ctx) {
  if (!is_row_orthogonal(q, ctx)) throw Error(ErrorKind::Precondition, std::string(what) + " must be row orthogonal");
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> r;
  for (std::size_t k = from; k < to; ++k) r.push_back(k);
  return r;
}

}  // namespace

template <class T>
ConstructionResult<T> merge_row_orthogonal(const Matrix<T>& m, const Matrix<T>& n, const NumericContext& ctx) {
  if (m.rows() < 2 || m.cols() < 2 || n.rows() < 2 || n.cols() < 2)
    throw Error(ErrorKind::DimensionMismatch, "merge inputs need at least two rows and columns");
  require_orthogonal_rows(m, "M", ctx);
  require_orthogonal_rows(n, "N", ctx);
  const std::size_t mr = m.rows() - 1, mc = m.cols() - 1;
  const std::size_t nr = n.rows() - 1, nc = n.cols() - 1;
  if (!FieldTraits<T>::is_zero(m(mr, mc), ctx)) throw Error(ErrorKind::Precondition, "M needs a zero bottom-right entry");
  if (!FieldTraits<T>::is_zero(n(0, 0), ctx)) throw Error(ErrorKind::Precondition, "N needs a zero top-left entry");
  const Matrix<T> a = m.submatrix(range(0, mr), range(0, mc));
  const Matrix<T> v = m.submatrix(range(0, mr), {mc});
  const Matrix<T> ut = m.submatrix({mr}, range(0, mc));
  const Matrix<T> xt = n.submatrix({0}, range(1, nc + 1));
  const Matrix<T> y = n.submatrix(range(1, nr + 1), {0});
  const Matrix<T> b = n.submatrix(range(1, nr + 1), range(1, nc + 1));
  require_nowhere_zero(v, "v", ctx);
  require_nowhere_zero(ut, "u", ctx);
  require_nowhere_zero(xt, "x", ctx);
  require_nowhere_zero(y, "y", ctx);
  ConstructionResult<T> res;
  res.q = block<T>({{a, v * xt}, {y * ut, b}});
  res.sipp_implied = has(m, ctx) && has(n, ctx);
  return res;
}

template <class T>
ConstructionResult<T> block_lower_triangular(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c,
                                             const NumericContext& ctx) {
  if (b.cols() != a.cols() || b.rows() != c.rows())
    throw Error(ErrorKind::DimensionMismatch, "blocks of [[A, O], [B, C]] are not conformal");
  ConstructionResult<T> res;
  res.q = block<T>({{a, Matrix<T>(a.rows(), c.cols())}, {b, c}});
  require_orthogonal_rows(res.q, "[[A, O], [B, C]]", ctx);
  require_nowhere_zero(b, "B", ctx);
  res.sipp_implied = has(a, ctx) && has(c, ctx);
  return res;
}

template <class T>
ConstructionResult<T> bordered(const Matrix<T>& m, const Matrix<T>& n, const NumericContext& ctx) {
  if (m.rows() < 2 || n.cols() < 2) throw Error(ErrorKind::DimensionMismatch, "M needs two rows and N two columns");
  require_orthogonal_rows(m, "M", ctx);
  require_orthogonal_rows(n, "N", ctx);
  const std::size_t p = m.rows() - 1;
  const Matrix<T> a = m.submatrix(range(0, p), range(0, m.cols()));
  const Matrix<T> at = m.submatrix({p}, range(0, m.cols()));
  const Matrix<T> bcol = n.submatrix(range(0, n.rows()), {0});
  const Matrix<T> bb = n.submatrix(range(0, n.rows()), range(1, n.cols()));
  require_nowhere_zero(at, "a", ctx);
  require_nowhere_zero(bcol, "b", ctx);
  ConstructionResult<T> res;
  res.q = block<T>({{a, Matrix<T>(p, bb.cols())}, {bcol * at, bb}});
  res.sipp_implied = has(m, ctx) && has(n, ctx);
  return res;
}

template <class T>
Matrix<T> pad_columns(const Matrix<T>& a, std::size_t p) {
  if (p <= a.cols()) throw Error(ErrorKind::InvalidInput, "padding needs p > n");
  return hstack(a, Matrix<T>(a.rows(), p - a.cols()));
}

template <class T>
Matrix<T> cayley(const Matrix<T>& k, const T& eps, const NumericContext& ctx) {
  if (!is_skew_symmetric(k, ctx)) throw Error(ErrorKind::InvalidInput, "Cayley transform needs a skew-symmetric K");
  const Matrix<T> id = Matrix<T>::identity(k.rows());
  const Matrix<T> ek = eps * k;
  return (id - ek) * inverse(Matrix<T>(id + ek), ctx);
}

#define SIPP_INSTANTIATE(T)                                                                                      \
  template ConstructionResult<T> merge_row_orthogonal(const Matrix<T>&, const Matrix<T>&, const NumericContext&); \
  template ConstructionResult<T> block_lower_triangular(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&,    \
                                                        const NumericContext&);                                 \
  template ConstructionResult<T> bordered(const Matrix<T>&, const Matrix<T>&, const NumericContext&);           \
  template Matrix<T> pad_columns(const Matrix<T>&, std::size_t);                                                \
  template Matrix<T> cayley(const Matrix<T>&, const T&, const NumericContext&);

SIPP_INSTANTIATE(Rational)
SIPP_INSTANTIATE(double)

#undef SIPP_INSTANTIATE

}  // namespace sipp
