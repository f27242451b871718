#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sipp/linalg/matrix.hpp"

namespace sipp {

enum class RejectKind { DisjointRows, TooManyZeros, ZeroBlock };

const char* to_string(RejectKind k);

struct QuickReject {
  RejectKind kind;
  std::string detail;
  /// Zero-based rows/columns involved (row pair, or zero block).
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  /// The zero-block obstruction is only established for row orthogonal input.
  bool needs_row_orthogonal = false;
};

/// Largest row count for which the zero-block search runs.
inline constexpr std::size_t kZeroBlockSearchCap = 12;

/// Structural obstructions to the SIPP; empty when none is found.
template <class T>
std::vector<QuickReject> quick_rejects(const Matrix<T>& m, const NumericContext& ctx = {});

/// Boolean support grid: true where the entry is nonzero.
using SupportGrid = std::vector<std::vector<bool>>;

template <class T>
SupportGrid support_grid(const Matrix<T>& m, const NumericContext& ctx = {});

struct ZeroBlock {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// A p x q all-zero submatrix (p, q >= 1) with p + q >= threshold maximizing
/// p + q, if one exists.
std::optional<ZeroBlock> find_zero_block(const SupportGrid& nonzero, std::size_t threshold);

}  // namespace sipp
