#pragma once

#include <optional>
#include <vector>

#include "sipp/signpat/sign_pattern.hpp"
#include "sipp/verification/verification.hpp"

namespace sipp {

struct RealizeOptions {
  double eps0 = 0.25;
  double res = 1e-10;
  int max_halvings = 60;
  /// Use this tangent direction instead of solving for one.
  std::optional<Matrix<double>> direction;
  NumericContext ctx;
};

enum class RealizeOutcome { Realized, NoTangentDirection, Inconclusive };

const char* to_string(RealizeOutcome o);

struct RealizationResult {
  RealizeOutcome outcome = RealizeOutcome::Inconclusive;
  Matrix<double> q_star;
  double epsilon = 0.0;
  double residual = 0.0;
  SignPattern achieved;
  /// +1 or -1 for square results, 0 otherwise.
  int det_sign = 0;
  int halvings = 0;
  std::vector<Obstruction> obstructions;

  bool realized() const { return outcome == RealizeOutcome::Realized; }
};

/// Polar factor (M M^T)^{-1/2} M. Throws Singular for rank-deficient M.
Matrix<double> retract_row_orthogonal(const Matrix<double>& m, const NumericContext& ctx = {});

/// Sign with a fixed tiny cutoff; realized entries meant to be zero are
/// set to exactly 0.
SignPattern realized_sign(const Matrix<double>& q);

/// Moves from Q along a tangent direction whose liberated entries carry the
/// target signs and retracts. Zeros the target keeps are restored by a
/// Gauss-Newton correction on the target support. Throws InvalidInput when
/// target is not a super pattern of sign(Q).
RealizationResult realize_superpattern(const Matrix<double>& q, const SignPattern& target, const RealizeOptions& opts = {});

/// (I - eps K)(I + eps K)^{-1} in exact arithmetic with eps halving until
/// the sign pattern is I - K.
RealizationResult realize_via_cayley(const SignPattern& k, const RealizeOptions& opts = {});

/// Restores Y Y^T = I while keeping entries outside `free` at zero.
/// Returns the final residual.
double correct_on_support(Matrix<double>& y, const std::vector<std::vector<bool>>& free, int max_iter = 30,
                          double target_residual = 1e-14);

}  // namespace sipp
