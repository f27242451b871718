#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "sipp/core/sipp.hpp"
#include "sipp/linalg/elimination.hpp"
#include "sipp/realize/realize.hpp"
#include "sipp/verification/verification.hpp"

using namespace sipp;

namespace {

SignPattern identity_minus(const Matrix<Rational>& k) {
  return sign_of(Matrix<Rational>(Matrix<Rational>::identity(k.rows()) - k));
}

SignPattern random_fill(const SignPattern& s, std::mt19937_64& rng) {
  SignPattern t = s;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (t(i, j) == 0) t.set(i, j, rng() % 2 ? 1 : -1);
  return t;
}

int det_sign(const Matrix<double>& q) { return determinant(q) > 0 ? 1 : -1; }

}  // namespace

TEST_CASE("polar retraction") {
  const auto q = hessenberg_orthogonal(4);
  CHECK(max_abs_diff(retract_row_orthogonal(q), q) <= 1e-12);
  const auto v = retract_row_orthogonal(from_ints<double>({{3, 4}}));
  CHECK(v(0, 0) == doctest::Approx(0.6));
  CHECK(v(0, 1) == doctest::Approx(0.8));
  CHECK_THROWS_AS(retract_row_orthogonal(from_ints<double>({{1, 1}, {2, 2}})), Error);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 10; ++t) {
    Matrix<double> m(3, 5);
    for (auto& x : m.data()) x = u(rng);
    CHECK(orthogonality_residual(retract_row_orthogonal(m)) <= 1e-12);
  }
}

TEST_CASE("small step along a tangent direction keeps signs") {
  const auto q = hessenberg_orthogonal(4);
  std::mt19937_64 rng(2);
  const auto target = random_fill(sign_of(q), rng);
  const auto dir = find_tangent_direction(q, target);
  REQUIRE(dir.b);
  require_tangent(q, *dir.b);
  const auto r = retract_row_orthogonal(q + 0.01 * *dir.b);
  CHECK(orthogonality_residual(r) <= 1e-12);
  CHECK(realized_sign(r) == target);
}

TEST_CASE("realize a Hessenberg super pattern") {
  const auto q = hessenberg_orthogonal(5);
  const auto target = fixtures::hessenberg5_target();
  REQUIRE(is_super_pattern(target, sign_of(q)));
  const auto r = realize_superpattern(q, target);
  REQUIRE(r.realized());
  CHECK(realized_sign(r.q_star) == target);
  CHECK(r.achieved == target);
  CHECK(r.residual <= 1e-10);
  CHECK(orthogonality_residual(r.q_star) <= 1e-10);
  CHECK(r.epsilon > 0);
  CHECK(r.det_sign == det_sign(q));
}

TEST_CASE("realization edge cases") {
  const auto q = hessenberg_orthogonal(4);
  const auto same = realize_superpattern(q, sign_of(q));
  CHECK(same.realized());
  CHECK(same.epsilon == 0.0);
  CHECK(same.q_star == q);

  SignPattern wrong = sign_of(q);
  wrong.set(3, 3, -wrong(3, 3));
  CHECK_THROWS_AS(realize_superpattern(q, wrong), Error);
  CHECK_THROWS_AS(realize_superpattern(q, SignPattern(3, 4)), Error);
  CHECK_THROWS_AS(realize_superpattern(from_ints<double>({{1, 1}, {0, 1}}), SignPattern{{1, 1}, {1, 1}}), Error);
}

TEST_CASE("barrier blocked targets report the obstruction") {
  const auto q = fixtures::barrier();
  const auto labels = fixtures::barrier_zero_labels();
  SignPattern bad = sign_of(q);
  const int r[8] = {1, -1, -1, 1, 0, 0, 0, 0};
  for (int k = 0; k < 8; ++k) bad.set(labels[k].row, labels[k].col, r[k]);
  const auto res = realize_superpattern(q, bad);
  CHECK(res.outcome == RealizeOutcome::NoTangentDirection);
  REQUIRE(res.obstructions.size() == 1);
  CHECK(res.obstructions.front().labels == labels);
  CHECK(std::string(to_string(res.outcome)) == "no_tangent_direction");

  SignPattern ok = sign_of(q);
  const int r2[8] = {1, 1, 0, 0, 0, 0, 0, 0};
  for (int k = 0; k < 8; ++k) ok.set(labels[k].row, labels[k].col, r2[k]);
  const auto good = realize_superpattern(q, ok);
  REQUIRE(good.realized());
  CHECK(realized_sign(good.q_star) == ok);
  CHECK(good.residual <= 1e-10);
}

TEST_CASE("biplane determinants differ") {
  const auto q = fixtures::biplane();
  const auto k = fixtures::biplane_k();
  const auto target = identity_minus(k);
  const auto cay = realize_via_cayley(sign_of(k));
  REQUIRE(cay.realized());
  CHECK(cay.achieved == target);
  CHECK(cay.det_sign == 1);
  CHECK(cay.residual <= 1e-10);

  const auto sup = realize_superpattern(to_double(q), target);
  REQUIRE(sup.realized());
  CHECK(realized_sign(sup.q_star) == target);
  CHECK(sup.det_sign == -1);
  CHECK(sup.det_sign == det_sign(to_double(q)));
  CHECK(det_sign(sup.q_star) == -1);
}

TEST_CASE("cayley realization") {
  const auto zero = realize_via_cayley(SignPattern(3, 3));
  REQUIRE(zero.realized());
  CHECK(zero.q_star == Matrix<double>::identity(3));

  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    SignPattern k(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) {
        const int s = rng() % 2 ? 1 : -1;
        k.set(i, j, s);
        k.set(j, i, -s);
      }
    const auto r = realize_via_cayley(k);
    REQUIRE(r.realized());
    CHECK(r.achieved == identity_minus(k.to_matrix<Rational>()));
    CHECK(r.residual <= 1e-10);
    // independent check at eps = 2^-10
    const auto p = cayley(k.to_matrix<Rational>(), Rational(1, 1024));
    CHECK(sign_of(p) == identity_minus(k.to_matrix<Rational>()));
    CHECK(is_row_orthogonal(p));
  }
  CHECK_THROWS_AS(realize_via_cayley(SignPattern{{1, 1}, {1, 1}}), Error);
}

TEST_CASE("halving is monotone on the Hessenberg family") {
  std::mt19937_64 rng(8);
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto q = hessenberg_orthogonal(n);
    const auto target = random_fill(sign_of(q), rng);
    const auto r = realize_superpattern(q, target);
    REQUIRE(r.realized());
    CHECK(r.det_sign == det_sign(q));
    RealizeOptions half;
    half.eps0 = r.epsilon / 2;
    const auto r2 = realize_superpattern(q, target, half);
    CHECK(r2.realized());
    CHECK(r2.halvings == 0);
    CHECK(realized_sign(r2.q_star) == target);
  }
}

TEST_CASE("kept zeros are restored") {
  // fill only one zero of the 5x5 Hessenberg pattern
  const auto q = hessenberg_orthogonal(5);
  SignPattern target = sign_of(q);
  target.set(0, 4, 1);
  const auto r = realize_superpattern(q, target);
  REQUIRE(r.realized());
  CHECK(realized_sign(r.q_star) == target);
  CHECK(r.q_star(0, 2) == 0.0);

  Matrix<double> y = q;
  y(0, 0) += 1e-3;
  std::vector<std::vector<bool>> free(5, std::vector<bool>(5, false));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) free[i][j] = q(i, j) != 0;
  CHECK(correct_on_support(y, free) <= 1e-14);
  CHECK(sign_of(y) == sign_of(q));
}
