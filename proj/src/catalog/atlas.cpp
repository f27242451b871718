#include <atomic>
#include <fstream>
#include <future>
#include <set>
#include <thread>

#include "sipp/catalog/catalog.hpp"
#include "sipp/linalg/matrix_io.hpp"
#include "sipp/signpat/canonical.hpp"
#include "sipp/signpat/pattern_io.hpp"

namespace sipp {

namespace {

void classify_all(const std::vector<SignPattern>& patterns, std::vector<Classification>& out,
                  const std::vector<std::size_t>& todo, const SeedLibrary& seeds, const ClassifyOptions& opts,
                  unsigned threads) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < todo.size(); k = next++) out[todo[k]] = classify(patterns[todo[k]], seeds, opts);
  };
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t) jobs.push_back(std::async(std::launch::async, worker));
  for (auto& j : jobs) j.get();
}

}  // namespace

std::vector<Classification> build_atlas(const AtlasBuildOptions& opts, const SeedLibrary& seeds) {
  const auto patterns = enumerate_patterns(opts.m, opts.n, opts.max_zeros, true);
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<Classification> out(patterns.size());
  std::vector<std::size_t> todo(patterns.size());
  for (std::size_t k = 0; k < todo.size(); ++k) todo[k] = k;
  classify_all(patterns, out, todo, seeds, opts.classify, threads);

  // Second pass: realizations with the SIPP found above become seeds.
  SeedLibrary more = seeds;
  bool grew = false;
  for (const auto& c : out)
    if (c.status == ClassStatus::CertifiedAllows && c.realization_has_sipp)
      grew |= more.add("atlas:" + c.pattern.to_text(), *c.realization);
  todo.clear();
  for (std::size_t k = 0; k < out.size(); ++k)
    if (out[k].status == ClassStatus::Unknown) todo.push_back(k);
  if (grew && !todo.empty()) classify_all(patterns, out, todo, more, opts.classify, threads);
  return out;
}

std::vector<std::string> audit_atlas(const std::vector<Classification>& atlas) {
  std::vector<std::string> issues;
  std::set<SignPattern> keys;
  for (std::size_t k = 0; k < atlas.size(); ++k) {
    const auto& c = atlas[k];
    const std::string at = "entry " + std::to_string(k + 1) + ": ";
    if (std::max(c.pattern.rows(), c.pattern.cols()) <= kEquivalenceDimCap &&
        !keys.insert(atlas_key(c.pattern)).second)
      issues.push_back(at + "duplicate equivalence class");
    const std::string violated = necessary_condition_violation(c.pattern);
    switch (c.status) {
      case ClassStatus::CertifiedAllows:
        if (!violated.empty()) issues.push_back(at + "allowed but " + violated);
        if (!c.realization) {
          issues.push_back(at + "allowed without a realization");
        } else {
          if (realized_sign(*c.realization) != c.pattern) issues.push_back(at + "realization has the wrong sign pattern");
          if (orthogonality_residual(*c.realization) > 1e-10) issues.push_back(at + "realization residual above 1e-10");
        }
        break;
      case ClassStatus::CertifiedBlocked:
        if (c.condition.empty()) issues.push_back(at + "blocked without a named condition");
        if (violated.empty()) issues.push_back(at + "blocked but every necessary condition holds");
        break;
      case ClassStatus::Unknown:
        if (!violated.empty()) issues.push_back(at + "unknown although " + violated);
        break;
    }
  }
  return issues;
}

nlohmann::json classification_to_json(const Classification& c) {
  nlohmann::json j;
  j["pattern"] = pattern_to_json(c.pattern);
  j["status"] = to_string(c.status);
  j["condition"] = c.condition;
  j["provenance"] = c.provenance;
  j["residual"] = c.residual;
  j["realization_has_sipp"] = c.realization_has_sipp;
  j["realization"] = c.realization ? to_json(*c.realization) : nlohmann::json(nullptr);
  return j;
}

Classification classification_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "classification must be a JSON object");
  Classification c;
  try {
    c.pattern = pattern_from_json(j.at("pattern"));
    c.status = class_status_from_string(j.at("status").get<std::string>());
    c.condition = j.value("condition", std::string());
    c.provenance = j.value("provenance", std::string());
    c.residual = j.value("residual", 0.0);
    c.realization_has_sipp = j.value("realization_has_sipp", false);
    if (j.contains("realization") && !j.at("realization").is_null())
      c.realization = float_matrix_from_json(j.at("realization"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return c;
}

void save_atlas(const std::filesystem::path& path, const std::vector<Classification>& atlas) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path.string());
  out << nlohmann::json{{"schema", "sipp-atlas"}, {"version", kAtlasSchemaVersion}}.dump() << '\n';
  for (const auto& c : atlas) out << classification_to_json(c).dump() << '\n';
  if (!out) throw Error(ErrorKind::InvalidInput, "write failed for " + path.string());
}

std::vector<Classification> load_atlas(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path.string());
  std::vector<Classification> out;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Parse, path.string() + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      fail("malformed JSON");
    }
    if (lineno == 1) {
      if (!j.is_object() || j.value("schema", std::string()) != "sipp-atlas")
        fail("missing atlas header");
      if (j.value("version", -1) != kAtlasSchemaVersion) fail("unsupported atlas version");
      continue;
    }
    try {
      out.push_back(classification_from_json(j));
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (lineno == 0) throw Error(ErrorKind::Parse, path.string() + ":1: missing atlas header");
  return out;
}

}  // namespace sipp
