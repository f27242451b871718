#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>

#include "sipp/catalog/catalog.hpp"
#include "sipp/constructions/constructions.hpp"
#include "sipp/core/sipp.hpp"
#include "sipp/linalg/elimination.hpp"
#include "sipp/linalg/matrix_io.hpp"
#include "sipp/signpat/canonical.hpp"

namespace sipp {

const char* to_string(ClassStatus s) {
  switch (s) {
    case ClassStatus::CertifiedAllows: return "CertifiedAllows";
    case ClassStatus::CertifiedBlocked: return "CertifiedBlocked";
    case ClassStatus::Unknown: return "Unknown";
  }
  return "?";
}

ClassStatus class_status_from_string(const std::string& s) {
  if (s == "CertifiedAllows") return ClassStatus::CertifiedAllows;
  if (s == "CertifiedBlocked") return ClassStatus::CertifiedBlocked;
  if (s == "Unknown") return ClassStatus::Unknown;
  throw Error(ErrorKind::Parse, "unknown classification status '" + s + "'");
}

bool operator==(const Classification& a, const Classification& b) {
  return a.pattern == b.pattern && a.status == b.status && a.condition == b.condition &&
         a.provenance == b.provenance && a.realization == b.realization && a.residual == b.residual &&
         a.realization_has_sipp == b.realization_has_sipp;
}

namespace {

constexpr double kSeedResidual = 1e-10;

bool float_has_sipp(const Matrix<double>& q) {
  if (q.rows() > q.cols()) return false;
  return has_sipp(q).verdict == SippVerdict::HasSIPP;
}

std::string index_list(const std::vector<std::size_t>& v) {
  std::string out = "{";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k] + 1);
  return out + "}";
}

std::string zero_block_violation(const SignPattern& s) {
  const std::size_t m = s.rows(), n = s.cols();
  if (m > 20) return "";
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < m; ++i)
      if ((mask >> i) & 1) rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j) {
      bool zero = true;
      for (auto i : rows) zero &= s(i, j) == 0;
      if (zero) cols.push_back(j);
    }
    if (cols.empty()) continue;
    const std::size_t p = rows.size(), q = cols.size();
    const std::string where = std::to_string(p) + "x" + std::to_string(q) + " zero block in rows " + index_list(rows) +
                              " and columns " + index_list(cols);
    if (p + q > n) return where + " has p + q > n";
    if (p + q == n) {
      for (std::size_t i = 0; i < m; ++i) {
        if ((mask >> i) & 1) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (s(i, j) != 0 && std::find(cols.begin(), cols.end(), j) == cols.end())
            return where + " has p + q = n while the block facing it is nonzero";
      }
    }
  }
  return "";
}

Matrix<double> pad(const Matrix<double>& a, std::size_t n) { return n == a.cols() ? a : pad_columns(a, n); }

Matrix<double> top_rows(const Matrix<double>& a, std::size_t m) {
  std::vector<std::size_t> rs(m), cs(a.cols());
  std::iota(rs.begin(), rs.end(), 0);
  std::iota(cs.begin(), cs.end(), 0);
  return a.submatrix(rs, cs);
}

Matrix<double> bottom_rows(const Matrix<double>& a, std::size_t m) {
  std::vector<std::size_t> rs(m), cs(a.cols());
  std::iota(rs.begin(), rs.end(), a.rows() - m);
  std::iota(cs.begin(), cs.end(), 0);
  return a.submatrix(rs, cs);
}

// Components of the bipartite support graph that contain at least one row.
struct Component {
  std::vector<std::size_t> rows, cols;
};

std::vector<Component> row_components(const SignPattern& s) {
  const std::size_t m = s.rows(), n = s.cols();
  std::vector<int> label(m + n, -1);
  std::vector<Component> out;
  for (std::size_t start = 0; start < m; ++start) {
    if (label[start] >= 0) continue;
    Component c;
    std::vector<std::size_t> stack{start};
    label[start] = static_cast<int>(out.size());
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      if (v < m) {
        c.rows.push_back(v);
        for (std::size_t j = 0; j < n; ++j)
          if (s(v, j) != 0 && label[m + j] < 0) {
            label[m + j] = label[start];
            stack.push_back(m + j);
          }
      } else {
        c.cols.push_back(v - m);
        for (std::size_t i = 0; i < m; ++i)
          if (s(i, v - m) != 0 && label[i] < 0) {
            label[i] = label[start];
            stack.push_back(i);
          }
      }
    }
    std::sort(c.rows.begin(), c.rows.end());
    std::sort(c.cols.begin(), c.cols.end());
    out.push_back(std::move(c));
  }
  return out;
}

SignPattern sub_pattern(const SignPattern& s, const Component& c) {
  SignPattern out(c.rows.size(), c.cols.size());
  for (std::size_t a = 0; a < c.rows.size(); ++a)
    for (std::size_t b = 0; b < c.cols.size(); ++b) out.set(a, b, s(c.rows[a], c.cols[b]));
  return out;
}

bool verifies(const Matrix<double>& q, const SignPattern& s, double res) {
  return realized_sign(q) == s && orthogonality_residual(q) <= res;
}

void mark_allows(Classification& c, Matrix<double> q, std::string provenance) {
  c.status = ClassStatus::CertifiedAllows;
  c.residual = orthogonality_residual(q);
  c.realization_has_sipp = float_has_sipp(q);
  c.realization = std::move(q);
  c.provenance = std::move(provenance);
}

Classification classify_core(const SignPattern& s, const SeedLibrary& seeds, const ClassifyOptions& opts);

Classification classify_components(const SignPattern& s, const std::vector<Component>& comps, const SeedLibrary& seeds,
                                   const ClassifyOptions& opts) {
  Classification res;
  res.pattern = s;
  Matrix<double> q(s.rows(), s.cols());
  std::string prov = "components(";
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto sub = classify(sub_pattern(s, comps[k]), seeds, opts);
    if (sub.status != ClassStatus::CertifiedAllows) {
      if (sub.status == ClassStatus::CertifiedBlocked)
        res.condition = "component with rows " + index_list(comps[k].rows) + ": " + sub.condition;
      res.status = sub.status;
      return res;
    }
    for (std::size_t a = 0; a < comps[k].rows.size(); ++a)
      for (std::size_t b = 0; b < comps[k].cols.size(); ++b)
        q(comps[k].rows[a], comps[k].cols[b]) = (*sub.realization)(a, b);
    prov += (k ? "; " : "") + sub.provenance;
  }
  if (verifies(q, s, opts.realize.res)) mark_allows(res, std::move(q), prov + ")");
  return res;
}

Classification classify_core(const SignPattern& s, const SeedLibrary& seeds, const ClassifyOptions& opts) {
  Classification res;
  res.pattern = s;
  const auto comps = row_components(s);
  std::size_t covered = 0;
  for (const auto& c : comps) covered += c.cols.size();
  if (comps.size() > 1 || covered < s.cols()) return classify_components(s, comps, seeds, opts);

  for (const auto& seed : seeds.seeds()) {
    if (seed.q.rows() != s.rows() || seed.q.cols() != s.cols()) continue;
    const auto e = embed_pattern(sign_of(seed.q), s);
    if (!e) continue;
    const Matrix<double> start = apply_signed_perms(seed.q, e->first, e->second);
    try {
      const auto r = realize_superpattern(start, s, opts.realize);
      if (r.realized() && verifies(r.q_star, s, opts.realize.res)) {
        mark_allows(res, r.q_star, seed.name);
        return res;
      }
    } catch (const Error&) {
    }
  }
  if (auto q = descent_realization(s, opts)) {
    mark_allows(res, std::move(*q), "descent");
    return res;
  }
  return res;
}

}  // namespace

std::string necessary_condition_violation(const SignPattern& s) {
  if (s.rows() > s.cols()) return "more rows than columns";
  if (auto po = potential_orthogonality_obstruction(s); !po.empty()) return "not potentially orthogonal: " + po;
  if (auto zb = zero_block_violation(s); !zb.empty()) return zb;
  return "";
}

std::optional<std::pair<SignedPerm, SignedPerm>> embed_pattern(const SignPattern& seed, const SignPattern& s) {
  const std::size_t m = s.rows(), n = s.cols();
  if (seed.rows() != m || seed.cols() != n) return std::nullopt;
  if (seed.rows() * seed.cols() - seed.zero_count() > m * n - s.zero_count()) return std::nullopt;

  std::vector<std::size_t> cperm(n);
  std::iota(cperm.begin(), cperm.end(), 0);
  std::vector<std::vector<bool>> compat(m, std::vector<bool>(m));
  std::vector<std::size_t> rows(m);
  std::vector<bool> used(m);

  // Row signs a_i and column signs b_k with a_i b_k seed(r_i, k) = s(i, c_k).
  auto solve_signs = [&](SignedPerm& p1, SignedPerm& p2) {
    std::vector<int> a(m, 0), b(n, 0);
    for (std::size_t i0 = 0; i0 < m; ++i0) {
      if (a[i0] != 0) continue;
      a[i0] = 1;
      std::vector<std::size_t> stack{i0};
      while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        if (v < m) {
          for (std::size_t k = 0; k < n; ++k) {
            const int t = seed(rows[v], k);
            if (t == 0) continue;
            const int need = a[v] * t * s(v, cperm[k]);
            if (b[k] == 0) {
              b[k] = need;
              stack.push_back(m + k);
            } else if (b[k] != need) {
              return false;
            }
          }
        } else {
          const std::size_t k = v - m;
          for (std::size_t i = 0; i < m; ++i) {
            const int t = seed(rows[i], k);
            if (t == 0) continue;
            const int need = b[k] * t * s(i, cperm[k]);
            if (a[i] == 0) {
              a[i] = need;
              stack.push_back(i);
            } else if (a[i] != need) {
              return false;
            }
          }
        }
      }
    }
    p1.perm = rows;
    p1.signs = a;
    p2.perm = cperm;
    p2.signs.resize(n);
    for (std::size_t k = 0; k < n; ++k) p2.signs[k] = b[k] == 0 ? 1 : b[k];
    return true;
  };

  std::optional<std::pair<SignedPerm, SignedPerm>> found;
  std::function<bool(std::size_t)> assign = [&](std::size_t i) {
    if (i == m) {
      SignedPerm p1, p2;
      if (!solve_signs(p1, p2)) return false;
      found.emplace(std::move(p1), std::move(p2));
      return true;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (used[r] || !compat[i][r]) continue;
      used[r] = true;
      rows[i] = r;
      if (assign(i + 1)) return true;
      used[r] = false;
    }
    return false;
  };

  do {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t r = 0; r < m; ++r) {
        bool ok = true;
        for (std::size_t k = 0; k < n && ok; ++k) ok = seed(r, k) == 0 || s(i, cperm[k]) != 0;
        compat[i][r] = ok;
      }
    std::fill(used.begin(), used.end(), false);
    if (assign(0)) return found;
  } while (std::next_permutation(cperm.begin(), cperm.end()));
  return std::nullopt;
}

bool SeedLibrary::add(std::string name, const Matrix<double>& q) {
  if (q.rows() == 0 || q.rows() > q.cols() || q.cols() > kEquivalenceDimCap) return false;
  if (orthogonality_residual(q) > kSeedResidual || !float_has_sipp(q)) return false;
  const SignPattern p = sign_of(q);
  for (const auto& s : seeds_)
    if (s.q.rows() == q.rows() && s.q.cols() == q.cols() && sign_of(s.q) == p) return false;
  seeds_.push_back({std::move(name), q});
  return true;
}

SeedLibrary SeedLibrary::builtin() {
  SeedLibrary lib;
  const std::size_t cap = kEquivalenceDimCap;
  for (std::size_t n = 1; n <= cap; ++n) {
    Matrix<double> e(1, n);
    e(0, 0) = 1.0;
    lib.add("unit row", e);
  }
  for (std::size_t k = 2; k <= cap; ++k) {
    const Matrix<double> h = hessenberg_orthogonal(k);
    for (const auto& [tag, q] : {std::pair{"", h}, std::pair{" transposed", h.transpose()}}) {
      const std::string name = "hessenberg(" + std::to_string(k) + ")" + tag;
      for (std::size_t n = k; n <= cap; ++n) lib.add(name + (n > k ? " padded" : ""), pad(q, n));
      for (std::size_t m = 2; m < k; ++m) {
        lib.add(name + " top " + std::to_string(m) + " rows", top_rows(q, m));
        lib.add(name + " bottom " + std::to_string(m) + " rows", bottom_rows(q, m));
      }
    }
  }
  for (std::size_t k = 4; k <= cap; ++k) {
    const Matrix<double> h = hollow_orthogonal(k);
    const std::string name = "hollow(" + std::to_string(k) + ")";
    for (std::size_t n = k; n <= cap; ++n) lib.add(name + (n > k ? " padded" : ""), pad(h, n));
    for (std::size_t m = 2; m < k; ++m) lib.add(name + " top " + std::to_string(m) + " rows", top_rows(h, m));
  }
  return lib;
}

std::size_t load_seed_directory(SeedLibrary& lib, const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return 0;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::size_t added = 0;
  for (const auto& f : files) {
    try {
      if (lib.add("cache:" + f.filename().string(), float_matrix_from_json(read_json_file(f)))) ++added;
    } catch (const std::exception&) {
    }
  }
  return added;
}

SeedLibrary SeedLibrary::with_cache() {
  SeedLibrary lib = builtin();
  if (const char* dir = std::getenv("SIPP_ATLAS_CACHE"); dir && *dir) load_seed_directory(lib, dir);
  return lib;
}

std::optional<Matrix<double>> descent_realization(const SignPattern& s, const ClassifyOptions& opts) {
  const std::size_t m = s.rows(), n = s.cols();
  if (m == 0 || m > n) return std::nullopt;
  std::vector<Entry> vars;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s(i, j) != 0) vars.push_back({i, j});
  const std::size_t eqs = m * (m + 1) / 2;

  std::uint64_t h = opts.rng_seed;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) h = h * 1099511628211ULL + static_cast<std::uint64_t>(s(i, j) + 2);
  std::mt19937_64 rng(h);
  std::normal_distribution<double> normal(0.0, 0.5);

  auto build = [&](const Vector<double>& t) {
    Matrix<double> q(m, n);
    for (std::size_t v = 0; v < vars.size(); ++v) q(vars[v].row, vars[v].col) = s(vars[v].row, vars[v].col) * std::exp(t[v]);
    return q;
  };
  auto residual_vec = [&](const Matrix<double>& q) {
    Vector<double> f(eqs);
    std::size_t r = 0;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b, ++r) {
        double x = a == b ? -1.0 : 0.0;
        for (std::size_t j = 0; j < n; ++j) x += q(a, j) * q(b, j);
        f[r] = x;
      }
    return f;
  };
  auto sq = [](const Vector<double>& f) {
    double x = 0.0;
    for (double v : f) x += v * v;
    return x;
  };
  const bool nowhere_zero = s.zero_count() == 0;

  for (int restart = 0; restart < opts.descent_restarts; ++restart) {
    Vector<double> t(vars.size());
    for (auto& x : t) x = normal(rng);
    {
      const Matrix<double> q = build(t);
      for (std::size_t v = 0; v < vars.size(); ++v) {
        double norm = 0.0;
        for (std::size_t j = 0; j < n; ++j) norm += q(vars[v].row, j) * q(vars[v].row, j);
        t[v] -= 0.5 * std::log(norm);
      }
    }
    double lambda = 1e-3;
    Matrix<double> q = build(t);
    Vector<double> f = residual_vec(q);
    double cost = sq(f);
    for (int it = 0; it < opts.descent_iterations && cost > 1e-28; ++it) {
      Matrix<double> jac(eqs + vars.size(), vars.size());
      Vector<double> rhs(eqs + vars.size(), 0.0);
      std::size_t r = 0;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b, ++r) {
          rhs[r] = -f[r];
          for (std::size_t v = 0; v < vars.size(); ++v) {
            const auto [i, j] = vars[v];
            double d = 0.0;
            if (i == a) d += q(b, j);
            if (i == b) d += q(a, j);
            jac(r, v) = d * q(i, j);
          }
        }
      const double damp = std::sqrt(lambda);
      for (std::size_t v = 0; v < vars.size(); ++v) jac(eqs + v, v) = damp;
      const Vector<double> step = least_squares_min_norm(jac, rhs);
      Vector<double> trial = t;
      for (std::size_t v = 0; v < vars.size(); ++v) trial[v] += step[v];
      const Matrix<double> qt = build(trial);
      const Vector<double> ft = residual_vec(qt);
      const double ct = sq(ft);
      if (ct < cost) {
        t = std::move(trial);
        q = qt;
        f = ft;
        cost = ct;
        lambda = std::max(lambda / 10, 1e-15);
      } else {
        lambda *= 10;
        if (lambda > 1e8) break;
      }
    }
    if (orthogonality_residual(q) > opts.realize.res) continue;
    double smallest = 1e300;
    for (const auto& e : vars) smallest = std::min(smallest, std::fabs(q(e.row, e.col)));
    if (smallest < 1e-6) continue;
    if (realized_sign(q) != s) continue;
    if (nowhere_zero || float_has_sipp(q)) return q;
  }
  return std::nullopt;
}

Classification classify(const SignPattern& s, const SeedLibrary& seeds, const ClassifyOptions& opts) {
  Classification res;
  res.pattern = s;
  if (s.rows() == 0 || s.cols() == 0) {
    res.condition = "empty pattern";
    res.status = ClassStatus::CertifiedBlocked;
    return res;
  }
  if (auto v = necessary_condition_violation(s); !v.empty()) {
    res.status = ClassStatus::CertifiedBlocked;
    res.condition = std::move(v);
    return res;
  }
  if (std::max(s.rows(), s.cols()) > kEquivalenceDimCap) return classify_core(s, seeds, opts);

  // Classify the class representative, then carry the realization back.
  const bool square = s.rows() == s.cols();
  CanonicalResult c = canonical_form_with_witness(s);
  bool transposed = false;
  if (square) {
    CanonicalResult ct = canonical_form_with_witness(s.transpose());
    if (ct.form < c.form) {
      c = std::move(ct);
      transposed = true;
    }
  }
  Classification rep = classify_core(c.form, seeds, opts);
  res.status = rep.status;
  res.condition = rep.condition;
  res.provenance = rep.provenance;
  if (rep.status != ClassStatus::CertifiedAllows) return res;
  Matrix<double> q = apply_signed_perms(*rep.realization, c.p1.inverse(), c.p2.inverse());
  if (transposed) q = q.transpose();
  if (!verifies(q, s, opts.realize.res)) return classify_core(s, seeds, opts);
  mark_allows(res, std::move(q), rep.provenance);
  return res;
}

Classification classify(const SignPattern& s) {
  static const SeedLibrary lib = SeedLibrary::with_cache();
  return classify(s, lib);
}

}  // namespace sipp
