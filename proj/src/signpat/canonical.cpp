#include "sipp/signpat/canonical.hpp"

#include <algorithm>
#include <array>

namespace sipp {

namespace {

constexpr std::size_t kMaxNodes = 2 * kEquivalenceDimCap;

// Signature state of the row and column nodes seen so far. comp < 0 marks a
// node that has not met a nonzero entry yet.
struct NodeState {
  std::array<int, kMaxNodes> comp;
  std::array<int, kMaxNodes> sign;
};

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const SignPattern& s) : s_(s), m_(s.rows()), n_(s.cols()) {}

  CanonicalResult run() {
    cur_.assign(m_ * n_, 0);
    used_.assign(m_, false);
    order_.assign(m_, 0);

    // Columns equal up to sign are interchangeable, so only one order of
    // each class is visited.
    std::vector<int> labels(n_);
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t j = 0; j < n_; ++j) {
      int found = -1;
      for (std::size_t c = 0; c < members.size() && found < 0; ++c)
        if (same_up_to_sign_col(members[c].front(), j)) found = static_cast<int>(c);
      if (found < 0) {
        found = static_cast<int>(members.size());
        members.push_back({});
      }
      members[static_cast<std::size_t>(found)].push_back(j);
      labels[j] = found;
    }
    std::sort(labels.begin(), labels.end());
    cp_.assign(n_, 0);
    do {
      std::vector<std::size_t> next(members.size(), 0);
      for (std::size_t j = 0; j < n_; ++j) {
        const auto c = static_cast<std::size_t>(labels[j]);
        cp_[j] = members[c][next[c]++];
      }
      NodeState st;
      st.comp.fill(-1);
      st.sign.fill(1);
      dfs(0, st);
    } while (std::next_permutation(labels.begin(), labels.end()));

    CanonicalResult r;
    r.form = SignPattern(m_, n_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r.form.set(i, j, best_[i * n_ + j]);
    r.p1 = SignedPerm::identity(m_);
    r.p2 = SignedPerm::identity(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      r.p1.perm[i] = best_rows_[i];
      r.p1.signs[i] = best_rsign_[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      r.p2.perm[best_cols_[j]] = j;
      r.p2.signs[best_cols_[j]] = best_csign_[j];
    }
    return r;
  }

 private:
  bool same_up_to_sign_col(std::size_t a, std::size_t b) const {
    bool eq = true, neg = true;
    for (std::size_t i = 0; i < m_; ++i) {
      eq &= s_(i, a) == s_(i, b);
      neg &= s_(i, a) == -s_(i, b);
    }
    return eq || neg;
  }

  bool same_up_to_sign_row(std::size_t a, std::size_t b) const {
    bool eq = true, neg = true;
    for (std::size_t j = 0; j < n_; ++j) {
      eq &= s_(a, j) == s_(b, j);
      neg &= s_(a, j) == -s_(b, j);
    }
    return eq || neg;
  }

  // Writes normalized row `depth` (original row r) into cur_ and updates st.
  void place_row(std::size_t depth, std::size_t r, NodeState& st) {
    const std::size_t rn = depth;
    for (std::size_t j = 0; j < n_; ++j) {
      const int v = s_(r, cp_[j]);
      int out = 0;
      if (v != 0) {
        const std::size_t cn = m_ + j;
        if (st.comp[rn] < 0 && st.comp[cn] < 0) {
          st.comp[rn] = st.comp[cn] = static_cast<int>(rn);
          st.sign[rn] = 1;
          st.sign[cn] = v;
          out = 1;
        } else if (st.comp[cn] < 0) {
          st.comp[cn] = st.comp[rn];
          st.sign[cn] = st.sign[rn] * v;
          out = 1;
        } else if (st.comp[rn] < 0) {
          st.comp[rn] = st.comp[cn];
          st.sign[rn] = v * st.sign[cn];
          out = 1;
        } else if (st.comp[rn] != st.comp[cn]) {
          const int from = st.comp[cn], to = st.comp[rn];
          const bool flip = st.sign[rn] * v * st.sign[cn] < 0;
          for (std::size_t k = 0; k < m_ + n_; ++k) {
            if (st.comp[k] != from) continue;
            st.comp[k] = to;
            if (flip) st.sign[k] = -st.sign[k];
          }
          out = 1;
        } else {
          out = st.sign[rn] * v * st.sign[cn];
        }
      }
      cur_[depth * n_ + j] = static_cast<std::int8_t>(out);
    }
  }

  int compare_prefix(std::size_t len) const {
    for (std::size_t k = 0; k < len; ++k) {
      if (cur_[k] != best_[k]) return cur_[k] < best_[k] ? -1 : 1;
    }
    return 0;
  }

  void dfs(std::size_t depth, const NodeState& st) {
    if (depth == m_) {
      if (have_best_ && compare_prefix(m_ * n_) >= 0) return;
      have_best_ = true;
      best_ = cur_;
      best_rows_ = order_;
      best_cols_ = cp_;
      best_rsign_.assign(m_, 1);
      best_csign_.assign(n_, 1);
      for (std::size_t i = 0; i < m_; ++i)
        if (st.comp[i] >= 0) best_rsign_[i] = st.sign[i];
      for (std::size_t j = 0; j < n_; ++j)
        if (st.comp[m_ + j] >= 0) best_csign_[j] = st.sign[m_ + j];
      return;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (used_[r]) continue;
      bool duplicate = false;
      for (std::size_t q = 0; q < r && !duplicate; ++q)
        duplicate = !used_[q] && same_up_to_sign_row(q, r);
      if (duplicate) continue;
      NodeState next = st;
      place_row(depth, r, next);
      if (have_best_ && compare_prefix((depth + 1) * n_) > 0) continue;
      used_[r] = true;
      order_[depth] = r;
      dfs(depth + 1, next);
      used_[r] = false;
    }
  }

  const SignPattern& s_;
  std::size_t m_, n_;
  std::vector<std::size_t> cp_;
  std::vector<std::size_t> order_;
  std::vector<bool> used_;
  std::vector<std::int8_t> cur_;
  std::vector<std::int8_t> best_;
  bool have_best_ = false;
  std::vector<std::size_t> best_rows_, best_cols_;
  std::vector<int> best_rsign_, best_csign_;
};

std::vector<std::size_t> sorted_line_counts(const SignPattern& s, bool rows) {
  std::vector<std::size_t> out(rows ? s.rows() : s.cols(), 0);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (s(i, j) != 0) ++out[rows ? i : j];
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CanonicalResult canonical_form_with_witness(const SignPattern& s) {
  if (s.rows() > kEquivalenceDimCap || s.cols() > kEquivalenceDimCap)
    throw Error(ErrorKind::DimensionCapped, "canonical form search is capped at dimension " +
                                                std::to_string(kEquivalenceDimCap));
  if (s.rows() == 0 || s.cols() == 0) return {s, SignedPerm::identity(s.rows()), SignedPerm::identity(s.cols())};
  return CanonicalSearch(s).run();
}

SignPattern canonical_form(const SignPattern& s) { return canonical_form_with_witness(s).form; }

std::optional<std::pair<SignedPerm, SignedPerm>> sign_equivalent(const SignPattern& s, const SignPattern& t) {
  if (s.rows() != t.rows() || s.cols() != t.cols()) return std::nullopt;
  if (s.rows() > kEquivalenceDimCap || s.cols() > kEquivalenceDimCap)
    throw Error(ErrorKind::DimensionCapped, "equivalence search is capped at dimension " +
                                                std::to_string(kEquivalenceDimCap));
  if (s.zero_count() != t.zero_count() || sorted_line_counts(s, true) != sorted_line_counts(t, true) ||
      sorted_line_counts(s, false) != sorted_line_counts(t, false))
    return std::nullopt;
  const auto a = canonical_form_with_witness(s);
  const auto b = canonical_form_with_witness(t);
  if (a.form != b.form) return std::nullopt;
  return std::make_pair(compose(b.p1.inverse(), a.p1), compose(a.p2, b.p2.inverse()));
}

}  // namespace sipp
