#pragma once

#include <optional>
#include <utility>

#include "sipp/signpat/signed_perm.hpp"

namespace sipp {

/// Largest row or column count accepted by the exhaustive searches.
inline constexpr std::size_t kEquivalenceDimCap = 7;

struct CanonicalResult {
  SignPattern form;
  SignedPerm p1;  // form = p1 * s * p2
  SignedPerm p2;
};

/// Least pattern (row-major, -1 < 0 < 1) among all P1 S P2. Each candidate
/// row/column arrangement is normalized by forcing the entries of a greedy
/// row-major spanning forest of its support to +1. Throws DimensionCapped
/// when a dimension exceeds kEquivalenceDimCap.
CanonicalResult canonical_form_with_witness(const SignPattern& s);

SignPattern canonical_form(const SignPattern& s);

/// Witnesses with t = p1 * s * p2, or nothing.
std::optional<std::pair<SignedPerm, SignedPerm>> sign_equivalent(const SignPattern& s, const SignPattern& t);

}  // namespace sipp
