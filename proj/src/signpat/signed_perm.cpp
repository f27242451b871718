#include "sipp/signpat/signed_perm.hpp"

#include <algorithm>
#include <numeric>

namespace sipp {

SignedPerm SignedPerm::identity(std::size_t n) {
  SignedPerm p;
  p.perm.resize(n);
  std::iota(p.perm.begin(), p.perm.end(), std::size_t{0});
  p.signs.assign(n, 1);
  return p;
}

SignedPerm SignedPerm::random(std::size_t n, std::mt19937_64& rng) {
  SignedPerm p = identity(n);
  std::shuffle(p.perm.begin(), p.perm.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (auto& s : p.signs) s = coin(rng) ? 1 : -1;
  return p;
}

bool SignedPerm::valid() const {
  if (signs.size() != perm.size()) return false;
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p]) return false;
    seen[p] = true;
  }
  return std::all_of(signs.begin(), signs.end(), [](int s) { return s == 1 || s == -1; });
}

SignedPerm SignedPerm::inverse() const {
  SignedPerm q;
  q.perm.resize(size());
  q.signs.resize(size());
  for (std::size_t i = 0; i < size(); ++i) {
    q.perm[perm[i]] = i;
    q.signs[perm[i]] = signs[i];
  }
  return q;
}

SignedPerm compose(const SignedPerm& a, const SignedPerm& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "compose: size mismatch");
  SignedPerm c;
  c.perm.resize(a.size());
  c.signs.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    c.perm[i] = b.perm[a.perm[i]];
    c.signs[i] = a.signs[i] * b.signs[a.perm[i]];
  }
  return c;
}

SignPattern apply_signed_perms(const SignPattern& s, const SignedPerm& p1, const SignedPerm& p2) {
  if (p1.size() != s.rows() || p2.size() != s.cols())
    throw Error(ErrorKind::DimensionMismatch, "apply_signed_perms: size mismatch");
  SignPattern out(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t k = 0; k < s.cols(); ++k)
      out.set(i, p2.perm[k], p1.signs[i] * p2.signs[k] * s(p1.perm[i], k));
  return out;
}

}  // namespace sipp
