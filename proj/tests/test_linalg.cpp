#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "fixtures.hpp"
#include "sipp/core/sipp.hpp"
#include "sipp/linalg/eigen_sym.hpp"
#include "sipp/linalg/elimination.hpp"
#include "sipp/linalg/matrix_io.hpp"

using namespace sipp;

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double>& a) {
  Eigen::MatrixXd e(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e(i, j) = a(i, j);
  return e;
}

Matrix<double> random_matrix(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix<double> a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
  return a;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational(" -4 ") == Rational(-4));
  CHECK(parse_rational("+7/2") == Rational(7, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("rref on small cases") {
  const auto r = rref(Matrix<Rational>::identity(3));
  CHECK(r.rank == 3);
  CHECK(r.pivot_cols == std::vector<std::size_t>{0, 1, 2});
  CHECK(rank(from_ints<Rational>({{1, 1}, {1, 1}})) == 1);
  CHECK(rank(from_ints<double>({{1, 1}, {1, 1}})) == 1);
  CHECK(rank(Matrix<Rational>(2, 3)) == 0);
}

TEST_CASE("biplane inverse-route system is 21 by 21 of rank 21") {
  const auto q = fixtures::biplane();
  const auto sys = inverse_route_system(q, inverse(q), zero_positions(q));
  CHECK(sys.rows() == 21);
  CHECK(sys.cols() == 21);
  CHECK(rank(sys) == 21);
  CHECK(determinant(sys) != 0);
}

TEST_CASE("nullspace") {
  CHECK(nullspace(Matrix<Rational>::identity(3)).empty());
  const auto ns = nullspace(from_ints<Rational>({{1, 1}}));
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == -ns[0][1]);
  CHECK(canonical_kernel_vector(ns) == Vector<Rational>{1, -1});

  const auto sys = sipp_system(fixtures::transpose_counterexample());
  CHECK_FALSE(nullspace(sys).empty());
  const auto syst = sipp_system(Matrix<Rational>(fixtures::transpose_counterexample().transpose()));
  CHECK(nullspace(syst).empty());
}

TEST_CASE("left nullspace of the reduced barrier table") {
  const auto psi = from_ints<Rational>({{1, 0, -1, 0, 0, 0, 1, 0},
                                        {0, 1, 0, -1, 0, 0, 0, 1},
                                        {-1, 0, 1, 0, 0, 0, 1, 0},
                                        {0, -1, 0, 1, 0, 0, 0, 1},
                                        {-1, 1, 0, 0, 1, 0, 0, 0},
                                        {0, 0, -1, 1, 0, 1, 0, 0},
                                        {1, -1, 0, 0, 1, 0, 0, 0},
                                        {0, 0, 1, -1, 0, 1, 0, 0}});
  const auto ln = left_nullspace(psi);
  REQUIRE(ln.size() == 1);
  CHECK(canonical_kernel_vector(ln) == Vector<Rational>{1, -1, -1, 1, 1, -1, -1, 1});
  CHECK(left_nullspace(Matrix<Rational>::identity(4)).empty());
}

TEST_CASE("rank and left nullspace agree with Eigen on random matrices") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 2 + t % 3, n = 3 + t % 4;
    auto a = random_matrix(m, n, rng);
    if (t % 2) {
      // force a dependent row
      for (std::size_t j = 0; j < n; ++j) a(m - 1, j) = a(0, j) - 2.0 * a(1 % m, j);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(a));
    lu.setThreshold(1e-9);
    CHECK(rank(a) == static_cast<std::size_t>(lu.rank()));
    const auto ln = left_nullspace(a);
    CHECK(ln.size() == m - static_cast<std::size_t>(lu.rank()));
    for (const auto& y : ln) {
      Eigen::VectorXd ye(m);
      for (std::size_t i = 0; i < m; ++i) ye(i) = y[i];
      CHECK((ye.transpose() * to_eigen(a)).norm() < 1e-9);
    }
  }
}

TEST_CASE("random full-row-rank 3x5 has empty left nullspace") {
  std::mt19937_64 rng(3);
  const auto a = random_matrix(3, 5, rng);
  REQUIRE(Eigen::FullPivLU<Eigen::MatrixXd>(to_eigen(a)).rank() == 3);
  CHECK(left_nullspace(a).empty());
}

TEST_CASE("inverse, solve and determinant") {
  const auto a = fixtures::transpose_counterexample();
  const auto expected = Rational(1, 2) * from_ints<Rational>({{1, 0, 0}, {-1, 1, -1}, {1, 1, 1}});
  CHECK(inverse(a) == expected);
  const auto c = fixtures::cycle3();
  CHECK(inverse(c) == Rational(1, 2) * from_ints<Rational>({{1, -1, 1}, {1, 1, -1}, {-1, 1, 1}}));
  CHECK(determinant(fixtures::biplane()) == Rational(-1));
  CHECK(determinant(Matrix<Rational>::identity(4)) == Rational(1));
  CHECK_THROWS_AS(inverse(from_ints<Rational>({{1, 2}, {2, 4}})), Error);

  const auto x = solve(c, Vector<Rational>{2, 2, 2});
  REQUIRE(x);
  CHECK(*x == Vector<Rational>{1, 1, 1});
  CHECK_FALSE(solve(from_ints<Rational>({{1, 1}, {1, 1}}), Vector<Rational>{1, 2}));
}

TEST_CASE("float inverse and determinant agree with Eigen") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_matrix(4, 4, rng);
    const auto e = to_eigen(a);
    CHECK(determinant(a) == doctest::Approx(e.determinant()).epsilon(1e-9));
    const auto inv = to_eigen(inverse(a));
    CHECK((inv - e.inverse()).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("least squares minimum norm matches Eigen") {
  std::mt19937_64 rng(8);
  const auto a = random_matrix(3, 6, rng);
  Vector<double> b{1.0, -2.0, 0.5};
  const auto x = least_squares_min_norm(a, b);
  Eigen::VectorXd be(3);
  be << 1.0, -2.0, 0.5;
  const Eigen::VectorXd xe = to_eigen(a).completeOrthogonalDecomposition().solve(be);
  for (std::size_t i = 0; i < 6; ++i) CHECK(x[i] == doctest::Approx(xe(i)).epsilon(1e-9));
}

TEST_CASE("vec and vec_restrict") {
  const auto a = from_ints<Rational>({{11, 12, 13}, {21, 22, 23}});
  CHECK(vec(a) == Vector<Rational>{11, 21, 12, 22, 13, 23});
  CHECK(unvec(vec(a), 2, 3) == a);
  CHECK(vec_index(1, 2, 2) == 5);
  CHECK(vec_restrict(a, {}).empty());
  CHECK(vec_restrict(Matrix<Rational>::identity(2), {{0, 1}, {1, 0}}) == Vector<Rational>{0, 0});
  CHECK_THROWS_AS(vec_restrict(a, {{2, 0}}), Error);
}

TEST_CASE("hadamard, block and direct sum") {
  const auto q = fixtures::add_vertex_q();
  CHECK(is_zero_matrix(hadamard(q, Matrix<Rational>(3, 3))));
  const auto qh = direct_sum(Matrix<Rational>::identity(1), q);
  CHECK(qh.rows() == 4);
  CHECK(qh(0, 0) == 1);
  for (std::size_t k = 1; k < 4; ++k) {
    CHECK(qh(0, k) == 0);
    CHECK(qh(k, 0) == 0);
  }
  CHECK(qh.submatrix({1, 2, 3}, {1, 2, 3}) == q);
  CHECK_THROWS_AS(hstack(Matrix<Rational>(2, 2), Matrix<Rational>(3, 1)), Error);
  CHECK_THROWS_AS(hadamard(Matrix<Rational>(2, 2), Matrix<Rational>(2, 3)), Error);
}

TEST_CASE("support and residuals") {
  const auto id = Matrix<double>::identity(2);
  CHECK(support(id) == IndexSet{{0, 0}, {1, 1}});
  CHECK(zero_positions(id) == IndexSet{{1, 0}, {0, 1}});
  CHECK(orthogonality_residual(fixtures::biplane()) == 0.0);
  CHECK(orthogonality_residual(from_ints<double>({{1, 1}, {0, 1}})) == doctest::Approx(1.0));
  CHECK(is_row_orthogonal(fixtures::biplane()));
  CHECK_FALSE(is_row_orthogonal(from_ints<Rational>({{1, 1}, {0, 1}})));
  CHECK(is_symmetric(from_ints<Rational>({{1, 2}, {2, 3}})));
  CHECK(is_skew_symmetric(fixtures::biplane_k()));
}

TEST_CASE("symmetric eigen and inverse square root") {
  std::mt19937_64 rng(2);
  const auto b = random_matrix(5, 5, rng);
  const auto a = b * b.transpose() + Matrix<double>::identity(5);
  const auto eig = symmetric_eigen(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a));
  for (std::size_t k = 0; k < 5; ++k) CHECK(eig.values[k] == doctest::Approx(es.eigenvalues()(k)).epsilon(1e-10));
  const auto r = inverse_sqrt_spd(a);
  CHECK(max_abs_diff(r * a * r, Matrix<double>::identity(5)) < 1e-10);
  CHECK_THROWS_AS(inverse_sqrt_spd(from_ints<double>({{1, 1}, {1, 1}})), Error);
}

TEST_CASE("matrix json round trip") {
  const auto q = fixtures::biplane();
  const auto j = to_json(q);
  CHECK(exact_matrix_from_json(j) == q);
  CHECK(std::holds_alternative<Matrix<Rational>>(matrix_from_json(j)));
  const auto f = to_json(Matrix<double>::identity(2));
  CHECK(std::holds_alternative<Matrix<double>>(matrix_from_json(f)));
  CHECK_THROWS_AS(exact_matrix_from_json(f), Error);
  CHECK(float_matrix_from_json(j)(0, 0) == 0.5);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json{{"rows", 1}, {"cols", 2}, {"entries", {{1, "1/2"}}}}), Error);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json{{"rows", 2}, {"cols", 1}, {"entries", {{1}}}}), Error);
}
