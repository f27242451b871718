#include "sipp/realize/realize.hpp"

#include <cmath>

#include "sipp/constructions/constructions.hpp"
#include "sipp/linalg/eigen_sym.hpp"
#include "sipp/linalg/elimination.hpp"

namespace sipp {

namespace {
constexpr double kZeroCutoff = 1e-13;

int det_sign_of(const Matrix<double>& q) {
  if (!q.is_square()) return 0;
  const double d = determinant(q);
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}
}  // namespace

const char* to_string(RealizeOutcome o) {
  switch (o) {
    case RealizeOutcome::Realized: return "realized";
    case RealizeOutcome::NoTangentDirection: return "no_tangent_direction";
    case RealizeOutcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

Matrix<double> retract_row_orthogonal(const Matrix<double>& m, const NumericContext& ctx) {
  if (m.rows() > m.cols()) throw Error(ErrorKind::DimensionMismatch, "retraction needs m <= n");
  return inverse_sqrt_spd(m * m.transpose(), ctx) * m;
}

SignPattern realized_sign(const Matrix<double>& q) {
  SignPattern s(q.rows(), q.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) {
      const double x = q(i, j);
      s.set(i, j, std::fabs(x) <= kZeroCutoff ? 0 : (x > 0 ? 1 : -1));
    }
  return s;
}

double correct_on_support(Matrix<double>& y, const std::vector<std::vector<bool>>& free, int max_iter,
                          double target_residual) {
  const std::size_t m = y.rows(), n = y.cols();
  std::vector<Entry> vars;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (free[i][j]) vars.push_back({i, j});
      else y(i, j) = 0.0;

  double residual = orthogonality_residual(y);
  for (int it = 0; it < max_iter && residual > target_residual; ++it) {
    const std::size_t eqs = m * (m + 1) / 2;
    Matrix<double> jac(eqs, vars.size());
    Vector<double> rhs(eqs);
    std::size_t row = 0;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b, ++row) {
        double f = a == b ? -1.0 : 0.0;
        for (std::size_t j = 0; j < n; ++j) f += y(a, j) * y(b, j);
        rhs[row] = -f;
        for (std::size_t v = 0; v < vars.size(); ++v) {
          const auto [i, j] = vars[v];
          double d = 0.0;
          if (i == a) d += y(b, j);
          if (i == b) d += y(a, j);
          jac(row, v) = d;
        }
      }
    const Vector<double> step = least_squares_min_norm(jac, rhs);
    Matrix<double> next = y;
    for (std::size_t v = 0; v < vars.size(); ++v) next(vars[v].row, vars[v].col) += step[v];
    const double r = orthogonality_residual(next);
    if (!(r < residual)) break;
    y = std::move(next);
    residual = r;
  }
  return residual;
}

RealizationResult realize_superpattern(const Matrix<double>& q, const SignPattern& target, const RealizeOptions& opts) {
  if (target.rows() != q.rows() || target.cols() != q.cols())
    throw Error(ErrorKind::DimensionMismatch, "target pattern must have the shape of Q");
  require_row_orthogonal(q, opts.ctx);
  const SignPattern s = sign_of(q, opts.ctx);
  if (!is_super_pattern(target, s)) throw Error(ErrorKind::InvalidInput, "target is not a super pattern of sign(Q)");

  RealizationResult res;
  if (target == s) {
    res.outcome = RealizeOutcome::Realized;
    res.q_star = q;
    res.residual = orthogonality_residual(q);
    res.achieved = s;
    res.det_sign = det_sign_of(q);
    return res;
  }

  Matrix<double> b;
  if (opts.direction) {
    require_tangent(q, *opts.direction, opts.ctx);
    b = *opts.direction;
  } else {
    auto dir = find_tangent_direction(q, target, opts.ctx);
    if (!dir.b) {
      res.outcome = RealizeOutcome::NoTangentDirection;
      res.obstructions = std::move(dir.obstructions);
      return res;
    }
    b = std::move(*dir.b);
  }

  std::vector<std::vector<bool>> free(q.rows(), std::vector<bool>(q.cols()));
  bool has_kept = false;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) {
      free[i][j] = target(i, j) != 0;
      has_kept |= target(i, j) == 0;
    }

  double eps = opts.eps0;
  for (int h = 0; h <= opts.max_halvings; ++h, eps /= 2) {
    Matrix<double> y;
    try {
      y = retract_row_orthogonal(q + eps * b, opts.ctx);
    } catch (const Error&) {
      continue;
    }
    double residual = has_kept ? correct_on_support(y, free) : orthogonality_residual(y);
    res.halvings = h;
    res.epsilon = eps;
    res.residual = residual;
    res.achieved = realized_sign(y);
    res.q_star = y;
    if (res.achieved == target && residual <= opts.res) {
      res.outcome = RealizeOutcome::Realized;
      res.det_sign = det_sign_of(y);
      return res;
    }
  }
  res.outcome = RealizeOutcome::Inconclusive;
  return res;
}

RealizationResult realize_via_cayley(const SignPattern& k, const RealizeOptions& opts) {
  if (k.rows() != k.cols()) throw Error(ErrorKind::InvalidInput, "Cayley realization needs a square pattern");
  const std::size_t n = k.rows();
  SignPattern target(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (k(i, j) != -k(j, i)) throw Error(ErrorKind::InvalidInput, "pattern is not skew-symmetric");
      target.set(i, j, i == j ? 1 : -k(i, j));
    }
  const Matrix<Rational> kk = k.to_matrix<Rational>();
  RealizationResult res;
  Rational eps(opts.eps0);
  for (int h = 0; h <= opts.max_halvings; ++h, eps /= 2) {
    const Matrix<Rational> q = cayley(kk, eps);
    const SignPattern got = sign_of(q);
    res.halvings = h;
    res.epsilon = eps.get_d();
    res.achieved = got;
    if (got == target) {
      res.outcome = RealizeOutcome::Realized;
      res.q_star = to_double(q);
      res.residual = orthogonality_residual(res.q_star);
      res.det_sign = sgn(determinant(q));
      return res;
    }
  }
  res.outcome = RealizeOutcome::Inconclusive;
  return res;
}

}  // namespace sipp
