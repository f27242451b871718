#pragma once

#include <cmath>
#include <random>

#include "sipp/constructions/constructions.hpp"
#include "sipp/linalg/matrix.hpp"
#include "sipp/signpat/signed_perm.hpp"

namespace fixtures {

using sipp::Matrix;
using sipp::Rational;

// 7x7 orthogonal Q = S / 2 with 21 zeros.
inline Matrix<Rational> biplane() {
  const auto s = sipp::from_ints<Rational>({{1, 0, 1, 0, -1, 0, 1},
                                            {-1, 1, 0, 1, 0, 0, 1},
                                            {0, 1, 1, 0, 0, 1, -1},
                                            {1, 0, -1, 1, 0, 1, 0},
                                            {0, -1, 1, 1, 1, 0, 0},
                                            {-1, -1, 0, 0, -1, 1, 0},
                                            {0, 0, 0, -1, 1, 1, 1}});
  return Rational(1, 2) * s;
}

// Skew matrix as displayed alongside the 7x7 example.
inline Matrix<Rational> biplane_k_displayed() {
  return sipp::from_ints<Rational>({{0, -1, -1, 1, 1, -1, -1},
                                    {1, 0, 1, -1, -1, -1, -1},
                                    {1, -1, 0, -1, 1, -1, 1},
                                    {-1, 1, 1, 0, 1, -1, -1},
                                    {-1, 1, -1, -1, 0, -1, -1},
                                    {1, 1, 1, 1, 1, 0, -1},
                                    {1, 1, -1, 1, 1, 1, 0}});
}

// Same with the (5,7) and (6,7) skew pairs flipped so that I - K is a super
// pattern of sign(S).
inline Matrix<Rational> biplane_k() {
  return sipp::from_ints<Rational>({{0, -1, -1, 1, 1, -1, -1},
                                    {1, 0, 1, -1, -1, -1, -1},
                                    {1, -1, 0, -1, 1, -1, 1},
                                    {-1, 1, 1, 0, 1, -1, -1},
                                    {-1, 1, -1, -1, 0, -1, 1},
                                    {1, 1, 1, 1, 1, 0, 1},
                                    {1, 1, -1, 1, -1, -1, 0}});
}

// Orthogonal 7x7 with 8 zeros whose tangent verification rows have one
// dependency.
inline Matrix<double> barrier() {
  const double w = 1.0 / std::sqrt(2.0);
  const double u[3] = {2.0 / 3, 1.0 / 3, -2.0 / 3};
  const double v[3] = {2.0 / 3, -2.0 / 3, 1.0 / 3};
  const double x[3] = {1.0 / 3, 2.0 / 3, 2.0 / 3};
  Matrix<double> q(7, 7);
  const double tl[4][4] = {{-0.5, 0.5, 0, 0}, {0.5, -0.5, 0, 0}, {0, 0, -0.5, 0.5}, {0, 0, 0.5, -0.5}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q(i, j) = tl[i][j];
  for (int k = 0; k < 3; ++k) {
    q(0, 4 + k) = q(1, 4 + k) = w * u[k];
    q(2, 4 + k) = q(3, 4 + k) = w * v[k];
    q(4 + k, 0) = q(4 + k, 1) = w * u[k];
    q(4 + k, 2) = q(4 + k, 3) = w * v[k];
    for (int l = 0; l < 3; ++l) q(4 + k, 4 + l) = x[k] * x[l];
  }
  return q;
}

// Zero-based labels of the barrier's zeros in column-stacking order.
inline sipp::IndexSet barrier_zero_labels() {
  return {{2, 0}, {3, 0}, {2, 1}, {3, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}};
}

// Symmetric hollow orthogonal matrix of order 6.
inline Matrix<double> symmetric_hollow6() {
  const auto a = sipp::from_ints<double>({{0, 1, 1, 1, 1, 1},
                                          {1, 0, 1, -1, -1, 1},
                                          {1, 1, 0, 1, -1, -1},
                                          {1, -1, 1, 0, 1, -1},
                                          {1, -1, -1, 1, 0, 1},
                                          {1, 1, -1, -1, 1, 0}});
  return (1.0 / std::sqrt(5.0)) * a;
}

// Full-rank, non-orthogonal; NotSIPP while its transpose has the SIPP.
inline Matrix<Rational> transpose_counterexample() {
  return sipp::from_ints<Rational>({{2, 0, 0}, {0, 1, 1}, {-2, -1, 1}});
}

inline Matrix<Rational> cycle3() { return sipp::from_ints<Rational>({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}); }

inline Matrix<Rational> add_vertex_q() {
  return Rational(1, 3) * sipp::from_ints<Rational>({{1, 2, 2}, {2, 1, -2}, {2, -2, 1}});
}

inline sipp::SignPattern johnson_waters() {
  return {{-1, 1, -1, 1, 1}, {1, -1, 1, -1, 1}, {1, 1, 1, 1, -1}, {1, 1, 1, 1, 1}};
}

inline sipp::SignPattern hessenberg5_target() {
  return {{1, -1, 0, 1, 1}, {1, 1, -1, 0, 1}, {1, 1, 1, -1, 1}, {1, 1, 1, 1, -1}, {1, 1, 1, 1, 1}};
}

// Rational rotation of the (i, j)-plane from a Pythagorean triple.
inline Matrix<Rational> rational_rotation(std::size_t n, std::size_t i, std::size_t j, int a, int b, int c,
                                          bool flip) {
  Matrix<Rational> g = Matrix<Rational>::identity(n);
  const Rational cs(a, c), sn(flip ? -b : b, c);
  g(i, i) = cs;
  g(j, j) = cs;
  g(i, j) = -sn;
  g(j, i) = sn;
  return g;
}

// Exact orthogonal matrix: a few rational rotations of I and signed permutations.
inline Matrix<Rational> random_rational_orthogonal(std::size_t n, std::mt19937_64& rng, int rotations) {
  static const int triples[3][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}};
  Matrix<Rational> q = Matrix<Rational>::identity(n);
  if (n < 2) return q;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> tri(0, 2), coin(0, 1);
  for (int r = 0; r < rotations; ++r) {
    std::size_t i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    if (i > j) std::swap(i, j);
    const auto& t = triples[tri(rng)];
    q = q * rational_rotation(n, i, j, t[0], t[1], t[2], coin(rng));
  }
  const auto p1 = sipp::SignedPerm::random(n, rng), p2 = sipp::SignedPerm::random(n, rng);
  return sipp::apply_signed_perms(q, p1, p2);
}

}  // namespace fixtures
