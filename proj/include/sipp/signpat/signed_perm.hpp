#pragma once

#include <random>
#include <vector>

#include "sipp/signpat/sign_pattern.hpp"

namespace sipp {

/// Signed permutation matrix P with P(i, perm[i]) = signs[i].
struct SignedPerm {
  std::vector<std::size_t> perm;
  std::vector<int> signs;

  static SignedPerm identity(std::size_t n);
  static SignedPerm random(std::size_t n, std::mt19937_64& rng);

  std::size_t size() const noexcept { return perm.size(); }
  bool valid() const;

  SignedPerm inverse() const;

  template <class T>
  Matrix<T> to_matrix() const {
    Matrix<T> m(size(), size());
    for (std::size_t i = 0; i < size(); ++i) m(i, perm[i]) = T(signs[i]);
    return m;
  }

  friend bool operator==(const SignedPerm&, const SignedPerm&) = default;
};

/// Matrix product a * b.
SignedPerm compose(const SignedPerm& a, const SignedPerm& b);

/// P1 S P2.
SignPattern apply_signed_perms(const SignPattern& s, const SignedPerm& p1, const SignedPerm& p2);

template <class T>
Matrix<T> apply_signed_perms(const Matrix<T>& a, const SignedPerm& p1, const SignedPerm& p2) {
  if (p1.size() != a.rows() || p2.size() != a.cols())
    throw Error(ErrorKind::DimensionMismatch, "apply_signed_perms: size mismatch");
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const int s = p1.signs[i] * p2.signs[k];
      const T& x = a(p1.perm[i], k);
      out(i, p2.perm[k]) = s > 0 ? x : T(-x);
    }
  return out;
}

}  // namespace sipp
