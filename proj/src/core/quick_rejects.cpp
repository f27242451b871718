#include "sipp/core/quick_rejects.hpp"

#include <optional>

namespace sipp {

const char* to_string(RejectKind k) {
  switch (k) {
    case RejectKind::DisjointRows: return "disjoint-rows";
    case RejectKind::TooManyZeros: return "too-many-zeros";
    case RejectKind::ZeroBlock: return "zero-block";
  }
  return "unknown";
}

template <class T>
SupportGrid support_grid(const Matrix<T>& m, const NumericContext& ctx) {
  SupportGrid g(m.rows(), std::vector<bool>(m.cols(), false));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = !FieldTraits<T>::is_zero(m(i, j), ctx);
  return g;
}

namespace {

struct BlockSearch {
  const SupportGrid& nz;
  std::size_t m, n, threshold;
  std::vector<std::size_t> rows;
  std::optional<ZeroBlock> best;
  std::size_t best_size = 0;

  void run(std::size_t next, const std::vector<std::size_t>& cols) {
    if (!rows.empty() && !cols.empty()) {
      const std::size_t size = rows.size() + cols.size();
      if (size >= threshold && size > best_size) {
        best_size = size;
        best = ZeroBlock{rows, cols};
      }
    }
    for (std::size_t r = next; r < m; ++r) {
      std::vector<std::size_t> keep;
      for (auto c : cols)
        if (!nz[r][c]) keep.push_back(c);
      if (keep.empty()) continue;
      // Rows r.. can add at most m - r more rows.
      if (rows.size() + (m - r) + keep.size() < std::max(threshold, best_size + 1)) continue;
      rows.push_back(r);
      run(r + 1, keep);
      rows.pop_back();
    }
  }
};

}  // namespace

std::optional<ZeroBlock> find_zero_block(const SupportGrid& nonzero, std::size_t threshold) {
  const std::size_t m = nonzero.size();
  const std::size_t n = m == 0 ? 0 : nonzero.front().size();
  std::vector<std::size_t> all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = j;
  BlockSearch s{nonzero, m, n, threshold, {}, std::nullopt, 0};
  s.run(0, all);
  return s.best;
}

template <class T>
std::vector<QuickReject> quick_rejects(const Matrix<T>& m, const NumericContext& ctx) {
  std::vector<QuickReject> out;
  const auto nz = support_grid(m, ctx);
  const std::size_t rows = m.rows(), cols = m.cols();

  for (std::size_t a = 0; a < rows; ++a)
    for (std::size_t b = a + 1; b < rows; ++b) {
      bool shared = false;
      for (std::size_t j = 0; j < cols && !shared; ++j) shared = nz[a][j] && nz[b][j];
      if (!shared)
        out.push_back({RejectKind::DisjointRows,
                       "rows " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " have disjoint supports",
                       {a, b},
                       {},
                       false});
    }

  std::size_t zeros = 0;
  for (const auto& r : nz)
    for (bool x : r) zeros += !x;
  const std::size_t bound = rows * cols - std::min(rows * cols, rows * (rows + 1) / 2);
  if (zeros > bound)
    out.push_back({RejectKind::TooManyZeros,
                   std::to_string(zeros) + " zero entries exceed the bound " + std::to_string(bound),
                   {},
                   {},
                   false});

  if (rows <= kZeroBlockSearchCap && cols > 0) {
    if (auto blk = find_zero_block(nz, cols)) {
      out.push_back({RejectKind::ZeroBlock,
                     std::to_string(blk->rows.size()) + "x" + std::to_string(blk->cols.size()) +
                         " zero submatrix with p + q >= " + std::to_string(cols),
                     blk->rows,
                     blk->cols,
                     true});
    }
  }
  return out;
}

template std::vector<QuickReject> quick_rejects(const Matrix<Rational>&, const NumericContext&);
template std::vector<QuickReject> quick_rejects(const Matrix<double>&, const NumericContext&);
template SupportGrid support_grid(const Matrix<Rational>&, const NumericContext&);
template SupportGrid support_grid(const Matrix<double>&, const NumericContext&);

}  // namespace sipp
