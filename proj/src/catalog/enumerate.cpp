#include <set>

#include "sipp/catalog/catalog.hpp"
#include "sipp/signpat/canonical.hpp"

namespace sipp {

SignPattern atlas_key(const SignPattern& s) {
  SignPattern a = canonical_form(s);
  if (s.rows() != s.cols()) return a;
  SignPattern b = canonical_form(s.transpose());
  return b < a ? b : a;
}

namespace {

void check_shape(std::size_t m, std::size_t n) {
  if (m == 0 || m > n || n > kEnumerateDimCap)
    throw Error(ErrorKind::DimensionCapped, "exhaustive enumeration needs 1 <= m <= n <= " +
                                                std::to_string(kEnumerateDimCap) + ", got " + std::to_string(m) + "x" +
                                                std::to_string(n));
}

// Calls f(zero mask) for every subset of the mn positions of size <= k.
template <class F>
void for_each_zero_set(std::size_t cells, std::size_t k, F&& f) {
  std::vector<bool> mask(cells, false);
  std::vector<std::size_t> idx;
  for (std::size_t size = 0; size <= std::min(k, cells); ++size) {
    idx.resize(size);
    for (std::size_t t = 0; t < size; ++t) idx[t] = t;
    while (true) {
      std::fill(mask.begin(), mask.end(), false);
      for (auto t : idx) mask[t] = true;
      f(mask);
      // next combination
      std::size_t t = size;
      while (t > 0 && idx[t - 1] == cells - size + t - 1) --t;
      if (t == 0) break;
      ++idx[t - 1];
      for (std::size_t u = t; u < size; ++u) idx[u] = idx[u - 1] + 1;
    }
  }
}

SignPattern support_pattern(std::size_t m, std::size_t n, const std::vector<bool>& zero) {
  SignPattern s(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!zero[i * n + j]) s.set(i, j, 1);
  return s;
}

// Support entries split into a spanning forest (fixed to +1 up to signature
// equivalence) and the remaining free edges.
void forest_split(const SignPattern& supp, std::vector<Entry>& forest, std::vector<Entry>& free) {
  const std::size_t m = supp.rows(), n = supp.cols();
  std::vector<std::size_t> parent(m + n);
  for (std::size_t v = 0; v < m + n; ++v) parent[v] = v;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (supp(i, j) == 0) continue;
      const auto a = find(i), b = find(m + j);
      if (a != b) {
        parent[a] = b;
        forest.push_back({i, j});
      } else {
        free.push_back({i, j});
      }
    }
}

}  // namespace

void enumerate_patterns(std::size_t m, std::size_t n, std::size_t max_zeros, bool dedup,
                        const std::function<void(const SignPattern&)>& emit) {
  check_shape(m, n);
  const std::size_t cells = m * n;
  if (!dedup) {
    for_each_zero_set(cells, max_zeros, [&](const std::vector<bool>& zero) {
      std::vector<std::size_t> nz;
      for (std::size_t t = 0; t < cells; ++t)
        if (!zero[t]) nz.push_back(t);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << nz.size()); ++bits) {
        SignPattern s(m, n);
        for (std::size_t k = 0; k < nz.size(); ++k) s.set(nz[k] / n, nz[k] % n, (bits >> k) & 1 ? -1 : 1);
        emit(s);
      }
    });
    return;
  }

  std::set<SignPattern> supports;
  for_each_zero_set(cells, max_zeros, [&](const std::vector<bool>& zero) {
    supports.insert(atlas_key(support_pattern(m, n, zero)));
  });
  std::set<SignPattern> classes;
  for (const auto& supp : supports) {
    // The key of a nonnegative pattern may carry signs; only its support matters.
    SignPattern base(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (supp(i, j) != 0) base.set(i, j, 1);
    std::vector<Entry> forest, free;
    forest_split(base, forest, free);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
      SignPattern s = base;
      for (std::size_t k = 0; k < free.size(); ++k)
        if ((bits >> k) & 1) s.set(free[k].row, free[k].col, -1);
      classes.insert(atlas_key(s));
    }
  }
  for (const auto& s : classes) emit(s);
}

std::vector<SignPattern> enumerate_patterns(std::size_t m, std::size_t n, std::size_t max_zeros, bool dedup) {
  std::vector<SignPattern> out;
  enumerate_patterns(m, n, max_zeros, dedup, [&](const SignPattern& s) { out.push_back(s); });
  return out;
}

}  // namespace sipp
