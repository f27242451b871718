#include "sipp/linalg/eigen_sym.hpp"

#include <cmath>
#include <numeric>

namespace sipp {

SymmetricEigen symmetric_eigen(const Matrix<double>& input) {
  if (!input.is_square()) throw Error(ErrorKind::DimensionMismatch, "symmetric_eigen: matrix must be square");
  const std::size_t n = input.rows();
  Matrix<double> a = input;
  Matrix<double> v = Matrix<double>::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-300) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymmetricEigen out{Vector<double>(n), Matrix<double>(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Matrix<double> inverse_sqrt_spd(const Matrix<double>& a, const NumericContext& ctx) {
  const auto eig = symmetric_eigen(a);
  const std::size_t n = a.rows();
  const double scale = eig.values.empty() ? 0.0 : std::fabs(eig.values.back());
  Matrix<double> out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] <= ctx.tau * std::max(scale, 1.0))
      throw Error(ErrorKind::Singular, "inverse_sqrt_spd: matrix is not positive definite");
    const double w = 1.0 / std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += w * eig.vectors(i, k) * eig.vectors(j, k);
  }
  return out;
}

}  // namespace sipp
