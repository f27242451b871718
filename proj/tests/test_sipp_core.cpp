#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "sipp/constructions/constructions.hpp"
#include "sipp/core/hollow.hpp"
#include "sipp/core/quick_rejects.hpp"
#include "sipp/core/sipp.hpp"
#include "sipp/linalg/elimination.hpp"
#include "sipp/signpat/sign_pattern.hpp"

using namespace sipp;

namespace {

bool has_reject(const std::vector<QuickReject>& rs, RejectKind k) {
  for (const auto& r : rs)
    if (r.kind == k) return true;
  return false;
}

// Brute-force witness check straight from the definition.
template <class T>
bool annihilates(const Matrix<T>& x, const Matrix<T>& m) {
  const auto xm = x * m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && xm(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("symmetric basis ordering") {
  const auto b = symmetric_basis(3);
  CHECK(b == std::vector<SymIndex>{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}});
  const auto x = assemble_symmetric(Vector<Rational>{1, 2, 3, 4, 5, 6}, 3);
  CHECK(x == from_ints<Rational>({{1, 2, 3}, {2, 4, 5}, {3, 5, 6}}));
}

TEST_CASE("has_sipp on known examples") {
  const auto q = fixtures::biplane();
  const auto cert = has_sipp(q);
  CHECK(cert.verdict == SippVerdict::HasSIPP);
  CHECK(cert.unknowns == 28);
  CHECK(cert.system_rank == 28);
  CHECK_FALSE(cert.witness);

  const auto a = fixtures::transpose_counterexample();
  const auto ca = has_sipp(a);
  REQUIRE(ca.verdict == SippVerdict::NotSIPP);
  REQUIRE(ca.witness);
  CHECK(is_symmetric(*ca.witness));
  CHECK_FALSE(is_zero_matrix(*ca.witness));
  CHECK(annihilates(*ca.witness, a));
  CHECK(has_sipp(Matrix<Rational>(a.transpose())).verdict == SippVerdict::HasSIPP);

  const auto id = has_sipp(Matrix<Rational>::identity(2));
  REQUIRE(id.verdict == SippVerdict::NotSIPP);
  CHECK(*id.witness == from_ints<Rational>({{0, 1}, {1, 0}}));

  CHECK(has_sipp(from_ints<Rational>({{1, 1}, {1, -1}})).verdict == SippVerdict::HasSIPP);
  CHECK(has_sipp(from_ints<Rational>({{1, 1}, {2, 2}})).verdict == SippVerdict::NotFullRank);
  CHECK_THROWS_AS(has_sipp(Matrix<Rational>(3, 2)), Error);
}

TEST_CASE("float has_sipp agrees with exact on rational orthogonal matrices") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 4;
    const auto q = fixtures::random_rational_orthogonal(n, rng, t % 5);
    const auto exact = has_sipp(q);
    CHECK(has_sipp(to_double(q)).verdict == exact.verdict);
    if (exact.witness) {
      CHECK(annihilates(*exact.witness, q));
      CHECK(verifies_witness(q, *exact.witness));
    }
  }
}

TEST_CASE("transpose invariance holds for orthogonal input only") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    const auto q = fixtures::random_rational_orthogonal(2 + t % 5, rng, t % 6);
    CHECK(has_sipp(q).verdict == has_sipp(Matrix<Rational>(q.transpose())).verdict);
  }
  const auto a = fixtures::transpose_counterexample();
  CHECK(has_sipp(a).verdict != has_sipp(Matrix<Rational>(a.transpose())).verdict);
}

TEST_CASE("inverse route") {
  const auto c = fixtures::cycle3();
  const auto cert = has_sipp_square_via_inverse(c);
  REQUIRE(cert.verdict == SippVerdict::NotSIPP);
  REQUIRE(cert.y);
  // a single unknown per zero, one-dimensional solution: Y is a permutation
  // matrix up to scale
  auto y = *cert.y;
  Rational scale;
  for (const auto& x : y.data())
    if (x != 0) scale = x;
  y = Rational(1 / scale) * y;
  CHECK(y == from_ints<Rational>({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
  CHECK(is_zero_matrix(hadamard(y, c)));
  CHECK(is_symmetric(Matrix<Rational>(y * inverse(c))));
  CHECK(verifies_witness(c, *cert.witness));

  const auto q = fixtures::biplane();
  const auto iq = has_sipp_square_via_inverse(q);
  CHECK(iq.verdict == SippVerdict::HasSIPP);
  CHECK(iq.unknowns == 21);
  CHECK(iq.verdict == has_sipp(q).verdict);

  const auto rot = fixtures::rational_rotation(2, 0, 1, 3, 4, 5, false);
  const auto r2 = has_sipp_square_via_inverse(rot);
  CHECK(r2.verdict == SippVerdict::HasSIPP);
  CHECK(r2.unknowns == 0);
  CHECK_THROWS_AS(has_sipp_square_via_inverse(from_ints<Rational>({{1, 1}, {1, 1}})), Error);
}

TEST_CASE("inverse route agrees with the direct route") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 40; ++t) {
    const auto q = fixtures::random_rational_orthogonal(2 + t % 5, rng, t % 7);
    CHECK(has_sipp_square_via_inverse(q).verdict == has_sipp(q).verdict);
  }
}

TEST_CASE("quick rejects") {
  const auto id = quick_rejects(Matrix<Rational>::identity(2));
  CHECK(has_reject(id, RejectKind::DisjointRows));

  const auto q = fixtures::biplane();
  CHECK(quick_rejects(q).empty());
  auto q22 = q;
  q22(0, 0) = 0;
  CHECK(has_reject(quick_rejects(q22), RejectKind::TooManyZeros));

  const auto bd = direct_sum(fixtures::add_vertex_q(), fixtures::rational_rotation(2, 0, 1, 3, 4, 5, false));
  const auto rs = quick_rejects(bd);
  REQUIRE(has_reject(rs, RejectKind::ZeroBlock));
  for (const auto& r : rs)
    if (r.kind == RejectKind::ZeroBlock) {
      CHECK(r.rows.size() + r.cols.size() >= 5);
      CHECK(r.needs_row_orthogonal);
      for (auto i : r.rows)
        for (auto j : r.cols) CHECK(bd(i, j) == 0);
    }
}

TEST_CASE("zero block search") {
  const SupportGrid g{{true, false, false}, {true, false, false}, {true, true, true}};
  const auto blk = find_zero_block(g, 3);
  REQUIRE(blk);
  CHECK(blk->rows == std::vector<std::size_t>{0, 1});
  CHECK(blk->cols == std::vector<std::size_t>{1, 2});
  CHECK_FALSE(find_zero_block(g, 5));
}

TEST_CASE("hollow signature test") {
  const auto a = fixtures::symmetric_hollow6();
  CHECK(is_hollow(a));
  const auto ra = hollow_sipp_by_signature(a);
  CHECK(ra.verdict == SippVerdict::NotSIPP);
  REQUIRE(ra.d1);
  CHECK(has_sipp(a).verdict == SippVerdict::NotSIPP);

  const GivensSpec g{6, 0, 1, M_PI / 6};
  const auto b = post_apply(g, pre_apply(g, a));
  CHECK(is_hollow(b));
  CHECK(sign_of(b) == sign_of(a));
  CHECK(hollow_sipp_by_signature(b).verdict == SippVerdict::HasSIPP);
  CHECK(has_sipp(b).verdict == SippVerdict::HasSIPP);

  const auto h4 = hollow_base4();
  CHECK(hollow_sipp_by_signature(h4).verdict == SippVerdict::HasSIPP);
  CHECK(has_sipp(h4).verdict == SippVerdict::HasSIPP);

  CHECK_FALSE(is_hollow(Matrix<double>::identity(3)));
  CHECK_THROWS_AS(hollow_sipp_by_signature(Matrix<double>::identity(3)), Error);
}

TEST_CASE("hollow signature test agrees with has_sipp after signature changes") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> coin(0, 1);
  for (std::size_t n : {4u, 5u, 6u, 7u}) {
    auto q = hollow_orthogonal(n);
    for (std::size_t i = 0; i < n; ++i)
      if (coin(rng))
        for (std::size_t j = 0; j < n; ++j) q(i, j) = -q(i, j);
    CHECK(hollow_sipp_by_signature(q).verdict == has_sipp(q).verdict);
  }
}

TEST_CASE("row removal") {
  const auto h = to_double(hessenberg_rows(4));
  Matrix<double> q = h;
  for (std::size_t i = 0; i < 4; ++i) {
    double nrm = 0;
    for (std::size_t j = 0; j < 4; ++j) nrm += h(i, j) * h(i, j);
    for (std::size_t j = 0; j < 4; ++j) q(i, j) = h(i, j) / std::sqrt(nrm);
  }
  // bhat = two rows of the 4x4, b = the all-ones row
  const auto bhat = q.submatrix({0, 1}, {0, 1, 2, 3});
  const auto b = q.row(3);
  const auto rep = check_remove_row(bhat, b);
  CHECK(rep.bhat_verdict == has_sipp(bhat).verdict);
  CHECK(rep.b_verdict == has_sipp(q.submatrix({0, 1, 3}, {0, 1, 2, 3})).verdict);
  CHECK(rep.rows_independent);
  CHECK(rep.b_nowhere_zero);
  CHECK(rep.implication_i_holds);
  if (rep.hypotheses_ii_met) CHECK(rep.implication_ii_holds);

  const auto zero_b = check_remove_row(q.submatrix({0, 2}, {0, 1, 2, 3}), q.row(1));
  CHECK_FALSE(zero_b.b_nowhere_zero);
  CHECK_FALSE(zero_b.hypotheses_ii_met);

  const auto dep = check_remove_row(bhat, Vector<double>{bhat(0, 0), bhat(0, 1), bhat(0, 2), bhat(0, 3)});
  CHECK_FALSE(dep.rows_independent);
  CHECK_FALSE(dep.hypotheses_ii_met);

  CHECK_THROWS_AS(check_remove_row(q.submatrix({0}, {0, 1, 2, 3}), b), Error);
}
