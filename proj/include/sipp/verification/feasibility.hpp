#pragma once

#include <optional>

#include "sipp/linalg/matrix.hpp"

namespace sipp {

/// Some x >= 0 with A x = b (phase-one simplex, Bland's rule), or nothing
/// when the system is infeasible within tolerance.
std::optional<Vector<double>> find_nonnegative_solution(const Matrix<double>& a, const Vector<double>& b,
                                                        double tol = 1e-9);

}  // namespace sipp
