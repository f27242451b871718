#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "fixtures.hpp"
#include "sipp/core/sipp.hpp"
#include "sipp/linalg/elimination.hpp"
#include "sipp/verification/feasibility.hpp"
#include "sipp/verification/verification.hpp"

using namespace sipp;

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double>& a) {
  Eigen::MatrixXd e(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e(i, j) = a(i, j);
  return e;
}

std::size_t eigen_rank(const Matrix<double>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(a));
  lu.setThreshold(1e-9);
  return static_cast<std::size_t>(lu.rank());
}

// Only X = O solves (XQ) o S = O for symmetric X, checked by building the
// system entry by entry and ranking it with Eigen.
bool only_trivial_solution(const Matrix<double>& q, const SignPattern& s) {
  const std::size_t m = q.rows();
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = k; l < m; ++l) unknowns.emplace_back(k, l);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) {
      if (s(i, j) == 0) continue;
      std::vector<double> row(unknowns.size(), 0.0);
      for (std::size_t u = 0; u < unknowns.size(); ++u) {
        const auto [k, l] = unknowns[u];
        if (k == i) row[u] += q(l, j);
        if (l == i && k != l) row[u] += q(k, j);
      }
      rows.push_back(row);
    }
  if (rows.empty()) return unknowns.empty();
  return eigen_rank(Matrix<double>::from_rows(rows)) == unknowns.size();
}

Matrix<double> random_row_orthogonal(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = g(rng);
  const Eigen::MatrixXd qf = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
  Matrix<double> q(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = qf(i, j);
  return q;
}

}  // namespace

TEST_CASE("orthogonal completion") {
  const auto q = fixtures::biplane();
  CHECK(orthogonal_completion(q) == q);
  CHECK(max_abs_diff(orthogonal_completion(from_ints<double>({{1, 0, 0}})), Matrix<double>::identity(3)) < 1e-15);
  CHECK_THROWS_AS(orthogonal_completion(from_ints<Rational>({{1, 0, 0}})), Error);

  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    const auto y = random_row_orthogonal(2, 4, rng);
    const auto p = orthogonal_completion(y);
    CHECK(orthogonality_residual(p) <= 1e-10);
    const auto qp = y * p.transpose();
    Matrix<double> io(2, 4);
    io(0, 0) = io(1, 1) = 1;
    CHECK(max_abs_diff(qp, io) <= 1e-10);
  }
  CHECK_THROWS_AS(orthogonal_completion(from_ints<double>({{1, 1}, {0, 1}})), Error);
}

TEST_CASE("tangent space dimensions and basis") {
  const auto q = to_double(fixtures::biplane());
  const auto ts = tangent_space_matrix(q, q);
  CHECK(ts.data.rows() == 49);
  CHECK(ts.data.cols() == 21);
  CHECK(rank(ts.data) == 21);
  CHECK(tangent_basis_labels(2, 4).size() == 8 - 3);

  // E_12 - E_21 at Q = P = I
  const auto id = Matrix<double>::identity(2);
  const auto t2 = tangent_space_matrix(id, id);
  REQUIRE(t2.data.cols() == 1);
  CHECK(t2.data.col(0) == Vector<double>{0, -1, 1, 0});
  CHECK(t2.col_labels.front() == BasisLabel{0, 1});

  // every column is a tangent vector: B Q^T skew
  std::mt19937_64 rng(5);
  const auto y = random_row_orthogonal(3, 5, rng);
  const auto p = orthogonal_completion(y);
  const auto ty = tangent_space_matrix(y, p);
  CHECK(ty.data.cols() == 15 - 6);
  CHECK(eigen_rank(ty.data) == 9);
  for (std::size_t c = 0; c < ty.data.cols(); ++c) {
    const auto b = unvec(ty.data.col(c), 3, 5);
    CHECK(is_skew_symmetric(Matrix<double>(b * y.transpose())));
  }
}

TEST_CASE("tangent verification matrix") {
  std::mt19937_64 rng(1);
  const auto nz = random_row_orthogonal(3, 3, rng);
  REQUIRE(is_nowhere_zero(nz));
  const auto psi = tangent_verification_matrix(nz, nz);
  CHECK(psi.data.rows() == 0);
  CHECK(sipp_by_verification(nz, VerificationRoute::Tangent).verdict == SippVerdict::HasSIPP);

  const auto h = hessenberg_orthogonal(3);
  const auto ph = tangent_verification_matrix(h, h);
  REQUIRE(ph.data.rows() == 1);
  CHECK(ph.row_labels.front() == Entry{0, 2});
  CHECK_FALSE(is_zero_matrix(ph.data));
  CHECK(sipp_by_verification(h, VerificationRoute::Tangent).verdict == SippVerdict::HasSIPP);

  const auto b = fixtures::barrier();
  const auto pb = tangent_verification_matrix(b, b);
  CHECK(pb.row_labels == fixtures::barrier_zero_labels());
  CHECK(eigen_rank(pb.data) == 7);
}

TEST_CASE("normal space matrix") {
  const auto q = to_double(fixtures::biplane());
  const auto ns = normal_space_matrix(q);
  CHECK(ns.data.cols() == 28);
  const auto om = normal_verification_matrix(q);
  CHECK(om.data.rows() == 28);
  CHECK(eigen_rank(om.data) == 28);
  CHECK(normal_space_matrix(from_ints<double>({{1, 0, 0}, {0, 1, 0}})).data.cols() == 3);

  const auto r = fixtures::rational_rotation(2, 0, 1, 3, 4, 5, false);
  const auto o2 = normal_verification_matrix(r);
  CHECK(o2.data == normal_space_matrix(r).data);
  CHECK(rank(o2.data) == 3);

  // tangent and normal spaces are orthogonal complements
  std::mt19937_64 rng(3);
  const auto y = random_row_orthogonal(2, 4, rng);
  const auto t = tangent_space_matrix(y, orthogonal_completion(y)).data;
  const auto n = normal_space_matrix(y).data;
  CHECK(max_abs(Matrix<double>(t.transpose() * n)) < 1e-12);
  CHECK(eigen_rank(hstack(t, n)) == 8);
}

TEST_CASE("verification routes") {
  const auto q = fixtures::biplane();
  CHECK(sipp_by_verification(q, VerificationRoute::Tangent).verdict == SippVerdict::HasSIPP);
  CHECK(sipp_by_verification(q, VerificationRoute::Normal).verdict == SippVerdict::HasSIPP);

  const auto b = fixtures::barrier();
  const auto bt = sipp_by_verification(b, VerificationRoute::Tangent);
  REQUIRE(bt.verdict == SippVerdict::NotSIPP);
  REQUIRE(bt.witness);
  CHECK(verifies_witness(b, *bt.witness));
  CHECK(sipp_by_verification(b, VerificationRoute::Normal).verdict == SippVerdict::NotSIPP);

  const auto id = sipp_by_verification(Matrix<Rational>::identity(2), VerificationRoute::Normal);
  CHECK(id.verdict == SippVerdict::NotSIPP);
  REQUIRE(id.witness);
  CHECK(verifies_witness(Matrix<Rational>::identity(2), *id.witness));
  CHECK_THROWS_AS(sipp_by_verification(from_ints<double>({{1, 1}, {0, 1}}), VerificationRoute::Tangent), Error);
}

TEST_CASE("verification routes agree with has_sipp") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 30; ++t) {
    const auto q = fixtures::random_rational_orthogonal(2 + t % 5, rng, t % 6);
    const auto v = has_sipp(q).verdict;
    CHECK(sipp_by_verification(q, VerificationRoute::Tangent).verdict == v);
    CHECK(sipp_by_verification(q, VerificationRoute::Normal).verdict == v);
    CHECK((v == SippVerdict::HasSIPP) == only_trivial_solution(to_double(q), sign_of(q)));
  }
}

TEST_CASE("liberation") {
  const auto q = fixtures::biplane();
  const auto k = fixtures::biplane_k();
  const auto dir = direction_from_skew(q, k);
  const auto lib = liberate(q, dir);
  CHECK(lib.verdict);
  CHECK(lib.mll_rows_independent);
  CHECK(is_super_pattern(lib.liberated, sign_of(q)));
  CHECK(lib.verdict == only_trivial_solution(to_double(q), lib.liberated));

  const auto zero = liberate(q, Matrix<Rational>(7, 7));
  CHECK(zero.liberated == sign_of(q));
  CHECK(zero.verdict == (has_sipp(q).verdict == SippVerdict::HasSIPP));

  const auto id = Matrix<Rational>::identity(2);
  CHECK_FALSE(liberate(id, Matrix<Rational>(2, 2)).verdict);
  CHECK_THROWS_AS(liberate(id, Matrix<Rational>::identity(2)), Error);
}

TEST_CASE("barrier liberation follows the obstruction vector") {
  const auto q = fixtures::barrier();
  const auto labels = fixtures::barrier_zero_labels();
  const auto s = sign_of(q);

  // liberating entries outside the blocked family
  SignPattern good = s;
  const int r_ok[8] = {1, 1, 0, 0, 0, 0, 0, 0};
  for (int t = 0; t < 8; ++t) good.set(labels[t].row, labels[t].col, r_ok[t]);
  const auto dir = find_tangent_direction(q, good);
  REQUIRE(dir.b);
  require_tangent(q, *dir.b);
  const auto lib = liberate(q, *dir.b);
  CHECK(lib.verdict);
  CHECK(lib.liberated == good);
  CHECK(lib.verdict == only_trivial_solution(q, lib.liberated));

  // r agrees in sign with x on its support: blocked
  SignPattern bad = s;
  const int r_bad[8] = {1, -1, 0, 0, 1, 0, 0, 0};
  for (int t = 0; t < 8; ++t) bad.set(labels[t].row, labels[t].col, r_bad[t]);
  const auto none = find_tangent_direction(q, bad);
  CHECK_FALSE(none.b);
  CHECK(none.obstructions.size() == 1);
}

TEST_CASE("liberation obstructions") {
  CHECK(liberation_obstructions(to_double(fixtures::biplane())).empty());
  const auto bd = to_double(direct_sum(fixtures::add_vertex_q(), fixtures::rational_rotation(2, 0, 1, 3, 4, 5, true)));
  const auto obs = liberation_obstructions(bd);
  CHECK_FALSE(obs.empty());
  const auto psi = tangent_verification_matrix(bd, bd);
  CHECK(obs.size() == psi.data.rows() - eigen_rank(psi.data));
}

TEST_CASE("add vertex") {
  const auto q = fixtures::add_vertex_q();
  const auto r = add_vertex_check(q, Vector<Rational>{0, 2, 1});
  CHECK(r.verdict);
  CHECK(r.dim_d == 1);
  CHECK(r.dim_f == 1);
  CHECK(r.ktq == Vector<Rational>{2, 0, -1});
  CHECK(r.pattern == SignPattern{{1, 1, 0, -1}, {0, 1, 1, 1}, {-1, 1, 1, -1}, {-1, 1, -1, 1}});
  CHECK(r.qhat == direct_sum(Matrix<Rational>::identity(1), q));

  const auto full = add_vertex_check(q, Vector<Rational>{1, 1, -1});
  CHECK(full.dim_d == 0);
  CHECK(full.verdict);

  const auto zero = add_vertex_check(q, Vector<Rational>{0, 0, 0});
  CHECK(zero.dim_d == 3);
  CHECK(zero.dim_f == 3);
  CHECK_FALSE(zero.verdict);
}

TEST_CASE("block compatibility") {
  const auto q1 = fixtures::rational_rotation(2, 0, 1, 3, 4, 5, false);
  const auto q2 = fixtures::rational_rotation(2, 0, 1, 5, 12, 13, true);
  const auto b12 = from_ints<Rational>({{1, 2}, {-1, 1}});
  const auto b21 = Rational(-1) * Matrix<Rational>(q2 * b12.transpose() * q1);
  const Matrix<Rational> o(2, 2);
  const auto r = waters_block_check<Rational>({q1, q2}, {{o, b12}, {b21, o}});
  const auto qq = direct_sum(q1, q2);
  CHECK(r.liberated == super_pattern(sign_of(qq), sign_of(Matrix<Rational>(block<Rational>({{o, b12}, {b21, o}})))));
  CHECK(r.verdict == only_trivial_solution(to_double(qq), r.liberated));

  const auto none = waters_block_check<Rational>({q1, q2}, {{o, o}, {o, o}});
  CHECK_FALSE(none.verdict);

  CHECK_THROWS_AS(waters_block_check<Rational>({q1, q2}, {{o, b12}, {b12, o}}), Error);
}

TEST_CASE("nonnegative feasibility") {
  const auto a = from_ints<double>({{1, 1, 0}, {0, 1, 1}});
  const Vector<double> b{1, 2};
  const auto x = find_nonnegative_solution(a, b);
  REQUIRE(x);
  for (double v : *x) CHECK(v >= -1e-12);
  const auto ax = a * *x;
  CHECK(ax[0] == doctest::Approx(1));
  CHECK(ax[1] == doctest::Approx(2));
  CHECK_FALSE(find_nonnegative_solution(from_ints<double>({{1, 1}}), Vector<double>{-1}));
  CHECK_FALSE(find_nonnegative_solution(from_ints<double>({{1, -1}, {-1, 1}}), Vector<double>{1, 1}));
}
