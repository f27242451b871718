#pragma once

#include "sipp/linalg/matrix.hpp"

namespace sipp {

struct SymmetricEigen {
  Vector<double> values;   // ascending
  Matrix<double> vectors;  // column k pairs with values[k]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
SymmetricEigen symmetric_eigen(const Matrix<double>& a);

/// (A)^(-1/2) for symmetric positive definite A; throws Singular when the
/// smallest eigenvalue is not positive relative to tau.
Matrix<double> inverse_sqrt_spd(const Matrix<double>& a, const NumericContext& ctx = {});

}  // namespace sipp
