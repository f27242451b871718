#include "sipp/verification/feasibility.hpp"

#include <cmath>
#include <limits>

namespace sipp {

std::optional<Vector<double>> find_nonnegative_solution(const Matrix<double>& a, const Vector<double>& b, double tol) {
  const std::size_t rows = a.rows(), cols = a.cols();
  if (b.size() != rows) throw Error(ErrorKind::DimensionMismatch, "find_nonnegative_solution: size mismatch");
  if (rows == 0) return Vector<double>(cols, 0.0);

  // Tableau columns: x (cols), artificials (rows), rhs.
  const std::size_t width = cols + rows + 1;
  Matrix<double> t(rows + 1, width);
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const double s = b[i] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < cols; ++j) t(i, j) = s * a(i, j);
    t(i, cols + i) = 1.0;
    t(i, width - 1) = s * b[i];
    basis[i] = cols + i;
  }
  // Objective row holds reduced costs of minimizing the artificial sum.
  for (std::size_t j = 0; j < width; ++j) {
    if (j >= cols && j < cols + rows) continue;
    double sum = 0.0;
    for (std::size_t i = 0; i < rows; ++i) sum += t(i, j);
    t(rows, j) = -sum;
  }

  double scale = 1.0;
  for (const auto& x : a.data()) scale = std::max(scale, std::fabs(x));
  for (auto x : b) scale = std::max(scale, std::fabs(x));
  const double eps = tol * scale;

  for (std::size_t iter = 0; iter < 50 * (rows + cols) + 100; ++iter) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (t(rows, j) < -eps) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = rows;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      if (t(i, enter) <= eps) continue;
      const double ratio = t(i, width - 1) / t(i, enter);
      if (ratio < best - eps || (std::fabs(ratio - best) <= eps && leave < rows && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == rows) break;  // unbounded direction cannot occur in phase one
    const double piv = t(leave, enter);
    for (std::size_t j = 0; j < width; ++j) t(leave, j) /= piv;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
  }

  Vector<double> x(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < cols) x[basis[i]] = std::max(0.0, t(i, width - 1));
  const Vector<double> ax = a * x;
  for (std::size_t i = 0; i < rows; ++i)
    if (std::fabs(ax[i] - b[i]) > std::sqrt(tol) * scale) return std::nullopt;
  return x;
}

}  // namespace sipp
