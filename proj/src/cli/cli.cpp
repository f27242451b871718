#include "sipp/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <optional>
#include <variant>

#include "sipp/catalog/catalog.hpp"
#include "sipp/constructions/constructions.hpp"
#include "sipp/core/sipp.hpp"
#include "sipp/linalg/matrix_io.hpp"
#include "sipp/realize/realize.hpp"
#include "sipp/signpat/pattern_io.hpp"
#include "sipp/verification/verification.hpp"

namespace sipp::cli {

namespace {

using nlohmann::json;

struct Config {
  std::string mode = "auto";
  double tol = 1e-9;
  double res = 1e-10;
  std::string format = "json";

  NumericContext ctx() const { return NumericContext{tol}; }
};

json label_json(const Entry& e) { return json::array({e.row + 1, e.col + 1}); }

json pattern_json(const SignPattern& s) {
  json rows = json::array();
  std::string text = s.to_text();
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    rows.push_back(text.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return rows;
}

void emit(std::ostream& out, const Config& cfg, const json& j) {
  if (cfg.format == "text" && j.is_object()) {
    for (const auto& [k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    return;
  }
  out << j.dump(2) << '\n';
}

AnyMatrix load_matrix(const std::string& path, const Config& cfg) {
  const json j = read_json_file(path);
  if (cfg.mode == "exact") return exact_matrix_from_json(j);
  if (cfg.mode == "float") return float_matrix_from_json(j);
  return matrix_from_json(j);
}

template <class T>
const char* mode_name() {
  return FieldTraits<T>::exact ? "exact" : "float";
}

std::string cell(const Rational& x) { return to_string(x); }
std::string cell(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
json certificate_json(const SippCertificate<T>& c) {
  json j;
  j["verdict"] = to_string(c.verdict);
  j["system_rank"] = c.system_rank;
  j["unknowns"] = c.unknowns;
  j["full_rank_checked"] = c.full_rank_checked;
  j["mode"] = mode_name<T>();
  j["witness"] = c.witness ? to_json(*c.witness) : json(nullptr);
  return j;
}

int verdict_exit(SippVerdict v) { return v == SippVerdict::HasSIPP ? kExitOk : kExitNegative; }

template <class T>
int check_sipp(const Matrix<T>& m, const std::string& route, bool emit_witness, const Config& cfg, std::ostream& out) {
  const auto ctx = cfg.ctx();
  json j;
  SippVerdict verdict;
  std::optional<Matrix<T>> witness;
  if (route == "direct") {
    const auto c = has_sipp(m, ctx);
    j = certificate_json(c);
    verdict = c.verdict;
    witness = c.witness;
  } else if (route == "inverse") {
    const auto c = has_sipp_square_via_inverse(m, ctx);
    j["verdict"] = to_string(c.verdict);
    j["system_rank"] = c.system_rank;
    j["unknowns"] = c.unknowns;
    j["mode"] = mode_name<T>();
    j["y"] = c.y ? to_json(*c.y) : json(nullptr);
    j["witness"] = c.witness ? to_json(*c.witness) : json(nullptr);
    verdict = c.verdict;
    witness = c.witness;
  } else {
    const auto c = sipp_by_verification(m, route == "tangent" ? VerificationRoute::Tangent : VerificationRoute::Normal, ctx);
    j = certificate_json(c);
    verdict = c.verdict;
    witness = c.witness;
  }
  j["route"] = route;
  if (emit_witness && witness) j["witness_verified"] = verifies_witness(m, *witness, ctx);
  emit(out, cfg, j);
  return verdict_exit(verdict);
}

template <class T>
void write_csv(const LabeledMatrix<T>& a, char prefix, std::ostream& out) {
  out << "\"entry\"";
  for (const auto& l : a.col_labels) out << ",\"" << prefix << "(" << l.i + 1 << "," << l.j + 1 << ")\"";
  out << '\n';
  for (std::size_t r = 0; r < a.row_labels.size(); ++r) {
    out << "\"(" << a.row_labels[r].row + 1 << "," << a.row_labels[r].col + 1 << ")\"";
    for (std::size_t c = 0; c < a.data.cols(); ++c) out << ',' << cell(a.data(r, c));
    out << '\n';
  }
}

template <class T>
int verif_matrix(const Matrix<T>& q, const std::string& kind, bool restricted, const Config& cfg, std::ostream& out) {
  const auto ctx = cfg.ctx();
  if (kind == "tangent") {
    const Matrix<T> p = orthogonal_completion(q, ctx);
    write_csv(restricted ? tangent_verification_matrix(q, p, ctx) : tangent_space_matrix(q, p, ctx), 'B', out);
  } else {
    write_csv(restricted ? normal_verification_matrix(q, ctx) : normal_space_matrix(q, ctx), 'C', out);
  }
  return kExitOk;
}

json obstructions_json(const std::vector<Obstruction>& obs) {
  json arr = json::array();
  for (const auto& o : obs) {
    json e;
    e["labels"] = json::array();
    for (const auto& l : o.labels) e["labels"].push_back(label_json(l));
    e["values"] = o.values;
    e["support"] = json::array();
    for (const auto& l : o.support) e["support"].push_back(label_json(l));
    arr.push_back(e);
  }
  return arr;
}

template <class T>
int liberate_cmd(const Matrix<T>& q, const std::optional<AnyMatrix>& dir, bool skew, const Config& cfg,
                 std::ostream& out) {
  const auto ctx = cfg.ctx();
  if (!dir) {
    require_row_orthogonal(q, ctx);
    json j;
    j["obstructions"] = obstructions_json(liberation_obstructions(to_double(q), ctx));
    emit(out, cfg, j);
    return kExitOk;
  }
  Matrix<T> b;
  if (const auto* d = std::get_if<Matrix<T>>(&*dir)) b = *d;
  else if constexpr (std::is_same_v<T, double>) b = to_double(std::get<Matrix<Rational>>(*dir));
  else throw Error(ErrorKind::InvalidInput, "exact mode needs an exact direction file");
  if (skew) b = direction_from_skew(q, b, ctx);
  const auto r = liberate(q, b, ctx);
  json j;
  j["verdict"] = r.verdict;
  j["mode"] = mode_name<T>();
  j["r"] = pattern_json(r.r);
  j["liberated"] = pattern_json(r.liberated);
  j["system_rank"] = r.system_rank;
  j["unknowns"] = r.unknowns;
  j["mll_rows_independent"] = r.mll_rows_independent;
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  emit(out, cfg, j);
  return r.verdict ? kExitOk : kExitNegative;
}

json realization_json(const RealizationResult& r) {
  json j;
  j["outcome"] = to_string(r.outcome);
  j["epsilon"] = r.epsilon;
  j["residual"] = r.residual;
  j["halvings"] = r.halvings;
  j["det_sign"] = r.det_sign;
  j["achieved"] = r.achieved.rows() ? pattern_json(r.achieved) : json(nullptr);
  j["matrix"] = r.q_star.rows() ? to_json(r.q_star) : json(nullptr);
  j["obstructions"] = obstructions_json(r.obstructions);
  return j;
}

int realize_exit(const RealizationResult& r) {
  return r.outcome == RealizeOutcome::NoTangentDirection ? kExitNegative : kExitOk;
}

json classification_out(const Classification& c) {
  json j = classification_to_json(c);
  j["pattern"] = pattern_json(c.pattern);
  return j;
}

template <class T>
json matrix_out(const Matrix<T>& m) {
  return to_json(m);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Strong inner product property toolkit for row orthogonal matrices and sign patterns", "sipp"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--mode", cfg.mode, "Arithmetic: exact, float, or auto (decided by the input file)")
      ->check(CLI::IsMember({"auto", "exact", "float"}));
  app.add_option("--tol", cfg.tol, "Zero tolerance for float mode")->check(CLI::PositiveNumber);
  app.add_option("--res", cfg.res, "Orthogonality residual bound for realizations")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string file, route = "direct", kind, direction, target, pattern_file, out_path, eps = "1/4", k_file,
                            first_file, second_file;
  bool emit_witness = false, restricted = false, exact_rows = false;
  double eps0 = 0.25;
  std::size_t n = 0, am = 3, an = 3, max_zeros = 9;
  unsigned threads = 0;

  auto* check = app.add_subcommand("check-sipp", "Decide the SIPP of a matrix file");
  check->add_option("file", file, "Matrix file")->required();
  check->add_flag("--emit-witness", emit_witness, "Also re-verify the witness");
  check->add_option("--route", route, "direct, inverse, tangent or normal")
      ->check(CLI::IsMember({"direct", "inverse", "tangent", "normal"}));

  auto* verif = app.add_subcommand("verif-matrix", "Tangent or normal verification matrix as labeled CSV");
  verif->add_option("file", file, "Row orthogonal matrix file")->required();
  verif->add_option("--kind", kind, "tangent or normal")->required()->check(CLI::IsMember({"tangent", "normal"}));
  verif->add_flag("--restricted", restricted, "Keep only the rows of the verification matrix");

  auto* lib = app.add_subcommand("liberate", "Matrix liberation test along a tangent direction");
  lib->add_option("file", file, "Row orthogonal matrix file")->required();
  lib->add_option("--direction", direction, "Direction B, or skew:<file> for B = K Q; omit to list obstructions");

  auto* real = app.add_subcommand("realize", "Realize a super pattern of sign(Q)");
  real->add_option("seed", file, "Row orthogonal seed matrix file")->required();
  real->add_option("--target", target, "Target pattern file")->required();
  real->add_option("--eps0", eps0, "Initial step")->check(CLI::PositiveNumber);

  auto* cons = app.add_subcommand("construct", "Build matrices from the construction library");
  cons->require_subcommand(1);
  auto* c_hess = cons->add_subcommand("hessenberg", "Orthogonal Hessenberg matrix");
  c_hess->add_option("--n", n, "Order")->required();
  c_hess->add_flag("--rows", exact_rows, "Integer rows before normalization (exact)");
  auto* c_hollow = cons->add_subcommand("hollow", "Hollow orthogonal matrix");
  c_hollow->add_option("--n", n, "Order")->required();
  auto* c_merge = cons->add_subcommand("merge", "Merge two row orthogonal matrices");
  c_merge->add_option("--first", first_file, "M = [[A, v], [u^T, 0]]")->required();
  c_merge->add_option("--second", second_file, "N = [[0, x^T], [y, B]]")->required();
  auto* c_cayley = cons->add_subcommand("cayley", "Cayley transform (I - eps K)(I + eps K)^-1");
  c_cayley->add_option("--k", k_file, "Skew-symmetric matrix file")->required();
  c_cayley->add_option("--eps", eps, "Scale, as p/q or decimal");

  auto* cls = app.add_subcommand("classify", "Classify a sign pattern");
  cls->add_option("file", pattern_file, "Pattern file")->required();

  auto* atlas = app.add_subcommand("atlas", "Build or audit an atlas of classified patterns");
  atlas->require_subcommand(1);
  auto* a_build = atlas->add_subcommand("build", "Classify every pattern class of a shape");
  a_build->add_option("--m", am, "Rows")->required();
  a_build->add_option("--n", an, "Columns")->required();
  a_build->add_option("--max-zeros", max_zeros, "Largest zero count")->required();
  a_build->add_option("--out", out_path, "Output JSONL file")->required();
  a_build->add_option("--threads", threads, "Worker threads (0: all cores)");
  auto* a_audit = atlas->add_subcommand("audit", "Check an atlas file for consistency");
  a_audit->add_option("file", file, "Atlas JSONL file")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitError;
  }

  try {
    const auto ctx = cfg.ctx();
    if (*check) {
      const auto m = load_matrix(file, cfg);
      return std::visit([&](const auto& mm) { return check_sipp(mm, route, emit_witness, cfg, out); }, m);
    }
    if (*verif) {
      auto m = load_matrix(file, cfg);
      // Non-square exact input needs the float completion.
      if (kind == "tangent" && cfg.mode == "auto")
        if (const auto* r = std::get_if<Matrix<Rational>>(&m); r && !r->is_square()) m = to_double(*r);
      return std::visit([&](const auto& mm) { return verif_matrix(mm, kind, restricted, cfg, out); }, m);
    }
    if (*lib) {
      const auto q = load_matrix(file, cfg);
      std::optional<AnyMatrix> dir;
      bool skew = false;
      if (!direction.empty()) {
        std::string path = direction;
        if (path.rfind("skew:", 0) == 0) {
          skew = true;
          path = path.substr(5);
        }
        dir = load_matrix(path, cfg);
      }
      return std::visit([&](const auto& qq) { return liberate_cmd(qq, dir, skew, cfg, out); }, q);
    }
    if (*real) {
      Config fcfg = cfg;
      if (cfg.mode == "exact") throw Error(ErrorKind::InvalidInput, "realize runs in float mode");
      fcfg.mode = "float";
      const auto q = std::get<Matrix<double>>(load_matrix(file, fcfg));
      RealizeOptions opts;
      opts.eps0 = eps0;
      opts.res = cfg.res;
      opts.ctx = ctx;
      const auto r = realize_superpattern(q, read_pattern_file(target), opts);
      emit(out, cfg, realization_json(r));
      return realize_exit(r);
    }
    if (*cons) {
      if (*c_hess) {
        if (exact_rows) emit(out, cfg, matrix_out(hessenberg_rows(n)));
        else emit(out, cfg, matrix_out(hessenberg_orthogonal(n)));
        return kExitOk;
      }
      if (*c_hollow) {
        emit(out, cfg, matrix_out(hollow_orthogonal(n)));
        return kExitOk;
      }
      if (*c_merge) {
        const auto a = load_matrix(first_file, cfg);
        const auto b = load_matrix(second_file, cfg);
        if (std::holds_alternative<Matrix<Rational>>(a) && std::holds_alternative<Matrix<Rational>>(b)) {
          const auto r = merge_row_orthogonal(std::get<Matrix<Rational>>(a), std::get<Matrix<Rational>>(b), ctx);
          emit(out, cfg, json{{"matrix", to_json(r.q)}, {"sipp_implied", r.sipp_implied}});
        } else {
          auto as_double = [](const AnyMatrix& x) {
            return std::visit([](const auto& mm) { return Matrix<double>(to_double(mm)); }, x);
          };
          const auto r = merge_row_orthogonal(as_double(a), as_double(b), ctx);
          emit(out, cfg, json{{"matrix", to_json(r.q)}, {"sipp_implied", r.sipp_implied}});
        }
        return kExitOk;
      }
      if (*c_cayley) {
        const auto k = load_matrix(k_file, cfg);
        if (const auto* kr = std::get_if<Matrix<Rational>>(&k)) {
          emit(out, cfg, matrix_out(cayley(*kr, parse_rational(eps), ctx)));
        } else {
          emit(out, cfg, matrix_out(cayley(std::get<Matrix<double>>(k), parse_rational(eps).get_d(), ctx)));
        }
        return kExitOk;
      }
    }
    if (*cls) {
      const auto c = classify(read_pattern_file(pattern_file));
      emit(out, cfg, classification_out(c));
      return c.status == ClassStatus::CertifiedBlocked ? kExitNegative : kExitOk;
    }
    if (*a_build) {
      AtlasBuildOptions opts;
      opts.m = am;
      opts.n = an;
      opts.max_zeros = max_zeros;
      opts.threads = threads;
      opts.classify.realize.res = cfg.res;
      const auto entries = build_atlas(opts, SeedLibrary::with_cache());
      save_atlas(out_path, entries);
      const auto issues = audit_atlas(entries);
      json j;
      j["entries"] = entries.size();
      for (auto s : {ClassStatus::CertifiedAllows, ClassStatus::CertifiedBlocked, ClassStatus::Unknown})
        j[to_string(s)] = std::count_if(entries.begin(), entries.end(), [&](const auto& e) { return e.status == s; });
      j["audit_violations"] = issues;
      j["out"] = out_path;
      emit(out, cfg, j);
      return issues.empty() ? kExitOk : kExitNegative;
    }
    if (*a_audit) {
      const auto issues = audit_atlas(load_atlas(file));
      emit(out, cfg, json{{"audit_violations", issues}});
      return issues.empty() ? kExitOk : kExitNegative;
    }
  } catch (const Error& e) {
    err << json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << '\n';
    return kExitError;
  } catch (const json::exception& e) {
    err << json{{"error", "parse"}, {"message", e.what()}}.dump() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << json{{"error", "input"}, {"message", e.what()}}.dump() << '\n';
    return kExitError;
  }
  err << app.help();
  return kExitError;
}

}  // namespace sipp::cli
