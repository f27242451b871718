#pragma once

#include <optional>
#include <vector>

#include "sipp/core/sipp.hpp"

namespace sipp {

/// Square, zero diagonal, every off-diagonal entry nonzero.
template <class T>
bool is_hollow(const Matrix<T>& q, const NumericContext& ctx = {});

struct HollowSignatureResult {
  SippVerdict verdict = SippVerdict::HasSIPP;
  /// Diagonal signs with diag(d1) Q diag(d2) symmetric, when they exist.
  std::optional<std::vector<int>> d1;
  std::optional<std::vector<int>> d2;
};

/// Decides whether a hollow orthogonal Q is signature equivalent to a
/// symmetric matrix; HasSIPP exactly when it is not. Throws Precondition on
/// non-hollow or non-orthogonal input.
template <class T>
HollowSignatureResult hollow_sipp_by_signature(const Matrix<T>& q, const NumericContext& ctx = {});

}  // namespace sipp
